"""Shared fixtures: the shipped example structures and small derived ones."""

from __future__ import annotations

from pathlib import Path

import pytest

from gpdkit import fixture_documents, unit_bundle

FIXTURES_DIR = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def docs():
    return fixture_documents()


@pytest.fixture(scope="session")
def z2(docs):
    return docs["z2.gpd"]


@pytest.fixture(scope="session")
def s3(docs):
    return docs["s3.gpd"]


@pytest.fixture(scope="session")
def pair2(docs):
    return docs["pair2.gpd"]


@pytest.fixture(scope="session")
def pair3(docs):
    return docs["pair3.gpd"]


@pytest.fixture(scope="session")
def z2_swap(docs):
    return docs["z2-swap.gpd"]


@pytest.fixture(scope="session")
def gauge_z2(docs):
    return docs["gauge-z2.gpd"]


@pytest.fixture(scope="session")
def unit_z2(docs):
    return docs["unit-z2.bnd"]


@pytest.fixture(scope="session")
def unit_s3(s3):
    return unit_bundle(s3)


@pytest.fixture(scope="session")
def unit_pair2(pair2):
    return unit_bundle(pair2)

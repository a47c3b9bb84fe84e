import pathlib

import pytest

from ontokit.disease import build_disease_ontology, table1_probes
from ontokit.reasoner import classify, normalize

REPO_ROOT = pathlib.Path(__file__).resolve().parent.parent
FIXTURES = REPO_ROOT / "fixtures"


@pytest.fixture(scope="session")
def disease():
    return build_disease_ontology()


@pytest.fixture(scope="session")
def disease_tbox(disease):
    return normalize(disease)


@pytest.fixture(scope="session")
def disease_taxonomy(disease):
    return classify(disease)


@pytest.fixture(scope="session")
def probes():
    return table1_probes()


@pytest.fixture(scope="session")
def fixture_dir():
    return FIXTURES

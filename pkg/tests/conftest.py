import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

REPO = Path(__file__).resolve().parent.parent
DATA = REPO / "data"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA


@pytest.fixture(scope="session")
def loan_onto_path() -> Path:
    return DATA / "ontologies" / "loan_small.onto"


@pytest.fixture(scope="session")
def loan_tbox(loan_onto_path):
    from treedistill.ontology import load_tbox

    return load_tbox(str(loan_onto_path))


@pytest.fixture(scope="session")
def loan_index(loan_tbox):
    from treedistill.ontology import classify

    return classify(loan_tbox)

import pytest

from vibrancy.ingest import load_bundle
from vibrancy.service import BUNDLED_DATA_DIR, create_app


@pytest.fixture(scope="session")
def bundle():
    return load_bundle(BUNDLED_DATA_DIR)


@pytest.fixture(scope="session")
def client(bundle):
    from fastapi.testclient import TestClient

    return TestClient(create_app(bundle=bundle))

import pytest


@pytest.fixture(autouse=True)
def _isolated_run_store(tmp_path, monkeypatch):
    # Keep CLI run records out of the real home directory during tests.
    monkeypatch.setenv("CHAINREP_DATA_DIR", str(tmp_path / "runstore"))

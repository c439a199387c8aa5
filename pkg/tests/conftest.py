import pytest

from pathlib import Path

from akgraph.cli import PipelineConfig, run_pipeline

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def essay_report():
    cfg = PipelineConfig(input_path=str(DATA / "essay056.txt"),
                         ann_path=str(DATA / "essay056.ann"),
                         prefs_path=str(DATA / "essay056.prefs"))
    return run_pipeline(cfg)


@pytest.fixture(scope="session")
def pollock_report():
    cfg = PipelineConfig(input_path=str(DATA / "pollock.json"))
    return run_pipeline(cfg)


@pytest.fixture(scope="session")
def essay(essay_report):
    return essay_report.artifacts


@pytest.fixture(scope="session")
def pollock(pollock_report):
    return pollock_report.artifacts

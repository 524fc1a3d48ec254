"""Shared fixtures: bundled datasets, canonical assignments, and a summary
table for the acceptance criteria."""

from pathlib import Path

import pytest

from ndswarm import DimensionAssignment, load_csv

REPO_ROOT = Path(__file__).resolve().parents[1]
WINE_CSV = REPO_ROOT / "data" / "winequality-red.csv"
TESTS_DATA = Path(__file__).resolve().parent / "data"

# Wine display mapping: quality/alcohol/pH on the face, the four named
# technical variables on the axes, the rest skipped.
WINE_DISPLAY_ASSIGNMENT = {
    "volatile acidity": {"category": "spatial", "target": "X"},
    "citric acid": {"category": "spatial", "target": "Y"},
    "residual sugar": {"category": "spatial", "target": "Z"},
    "sulphates": {"category": "spatial", "target": "T"},
    "quality": {"category": "visual", "target": "Smile"},
    "alcohol": {"category": "visual", "target": "Skin_C"},
    "pH": {"category": "visual", "target": "Nose_L"},
}

# Wine analysis mapping whose anonymous+spatial scope is exactly the seven
# technical variables the loading report is checked against.
WINE_PCA_ASSIGNMENT = {
    "volatile acidity": {"category": "spatial", "target": "X"},
    "citric acid": {"category": "spatial", "target": "Y"},
    "residual sugar": {"category": "spatial", "target": "Z"},
    "sulphates": {"category": "spatial", "target": "T"},
    "chlorides": {"category": "anonymous"},
    "free sulfur dioxide": {"category": "anonymous"},
    "density": {"category": "anonymous"},
    "quality": {"category": "visual", "target": "Smile"},
    "alcohol": {"category": "visual", "target": "Skin_C"},
}

POLITICIANS_ASSIGNMENT = {
    "promises": {"category": "visual", "target": "Skin_C"},
    "fulfillment": {"category": "visual", "target": "Nose_L"},
    "popularity": {"category": "visual", "target": "Smile"},
    "group_numeric": {"category": "visual", "target": "Hair_C"},
    "sympathy": {"category": "spatial", "target": "X"},
    "economic_views": {"category": "spatial", "target": "Y"},
    "social_views": {"category": "spatial", "target": "Z"},
    "media_activity": {"category": "anonymous"},
    "voting_effectiveness": {"category": "anonymous"},
    "age": {"category": "anonymous"},
}


@pytest.fixture(scope="session")
def wine_ds():
    return load_csv(WINE_CSV, delimiter=";")


@pytest.fixture(scope="session")
def wine_display_asgn(wine_ds):
    return DimensionAssignment.from_spec(WINE_DISPLAY_ASSIGNMENT, wine_ds.names)


@pytest.fixture(scope="session")
def wine_pca_asgn(wine_ds):
    return DimensionAssignment.from_spec(WINE_PCA_ASSIGNMENT, wine_ds.names)


@pytest.fixture(scope="session")
def politicians_ds():
    from ndswarm import generate_synthetic
    return generate_synthetic("politicians", 12, seed=42)


@pytest.fixture(scope="session")
def politicians_asgn(politicians_ds):
    return DimensionAssignment.from_spec(POLITICIANS_ASSIGNMENT,
                                         politicians_ds.names)


_CRITERIA: dict = {}


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "criterion(num, title): acceptance criterion check")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker and report.when == "call":
        num, title = marker.args
        entry = _CRITERIA.setdefault(num, {"title": title, "outcomes": []})
        entry["outcomes"].append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for num in sorted(_CRITERIA):
        entry = _CRITERIA[num]
        verdict = "PASS" if all(o == "passed" for o in entry["outcomes"]) \
            else "FAIL"
        terminalreporter.write_line(
            f"criterion {num:>2}: {verdict}  {entry['title']}")

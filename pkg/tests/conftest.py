import pytest

from foldideals.exactalg import GF, QQ
from foldideals.forms import Arrangement, FormCollection

# x, x-z, x+z, z, y, y-z
EXAMPLE_FORMS = "x, x-z, x+z, z, y, y-z"


def example_arrangement(field=QQ):
    return Arrangement.of(FormCollection.parse(field, EXAMPLE_FORMS))


@pytest.fixture
def arr():
    return example_arrangement()


@pytest.fixture
def arr7():
    return example_arrangement(GF(7))


def forms(text, field=QQ, variables="xyz"):
    return FormCollection.parse(field, text, variables=variables)


def pytest_terminal_summary(terminalreporter):
    module = next((m for name, m in __import__("sys").modules.items() if name.endswith("test_acceptance")), None)
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in range(1, 11):
        if number in results:
            ok, detail = results[number]
            terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
        else:
            terminalreporter.write_line(f"criterion {number:2d}: NOT RUN")

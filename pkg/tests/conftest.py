import pytest

from dcond.symbolic import Ring, parse_poly


def ring(names="x1,x2,x3"):
    return Ring.from_names(names)


def P(text, r=None):
    return parse_poly(text, r or ring())


@pytest.fixture
def R3():
    return ring()


@pytest.fixture
def R2():
    return ring("x1,x2")


# acceptance criteria report: test_acceptance.py records one line per criterion
ACCEPTANCE = {}


def record(number, ok, text):
    prev = ACCEPTANCE.get(number)
    ACCEPTANCE[number] = (ok and (prev is None or prev[0]), text if prev is None else prev[1])
    print(f"ACCEPTANCE {number:>2}: {'PASS' if ok else 'FAIL'}  {text}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, text = ACCEPTANCE[n]
        terminalreporter.write_line(f"{n:>2}. {'PASS' if ok else 'FAIL'}  {text}")

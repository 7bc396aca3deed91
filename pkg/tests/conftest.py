from fractions import Fraction

from hypothesis import strategies as st

from filiform import ParamTable
from filiform.automorphism import AutoSpec, MetabelianSeq

small_q = st.builds(
    Fraction,
    st.integers(-4, 4).filter(bool),
    st.integers(1, 3),
)


@st.composite
def tables(draw, trunc=14, max_entries=6):
    keys = [(j, s) for j in range(1, trunc) for s in range(1, trunc)
            if 2 * j + 1 + s <= trunc]
    chosen = draw(st.lists(st.sampled_from(keys), max_size=max_entries, unique=True))
    return ParamTable({k: draw(small_q) for k in chosen})


@st.composite
def seqs(draw, top=10, max_entries=5):
    chosen = draw(st.lists(st.integers(1, top), max_size=max_entries, unique=True))
    return MetabelianSeq({s: draw(small_q) for s in chosen})


@st.composite
def autos(draw, top=5):
    c = {0: draw(small_q)}
    d = {1: draw(small_q)}
    for i in draw(st.lists(st.integers(1, top), max_size=2, unique=True)):
        c[i] = draw(small_q)
    for i in draw(st.lists(st.integers(2, top), max_size=2, unique=True)):
        d[i] = draw(small_q)
    return AutoSpec(c, d)


_acceptance = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "acceptance" in report.keywords:
        _acceptance.append((report.nodeid.rsplit("::", 1)[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")

import pytest
from hypothesis import strategies as st

from p4color.graph import Graph


@st.composite
def graphs(draw, min_n=0, max_n=8):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [p for p, keep in zip(pairs, chosen) if keep])


@pytest.fixture(scope="session")
def atlas():
    from p4color.selftest import atlas_graphs

    return atlas_graphs(7)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS, TITLES
    except ImportError:
        return
    if not RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for criterion in sorted(TITLES):
        entry = RESULTS.get(criterion)
        if entry is None:
            tr.write_line(f"[SKIP] #{criterion} {TITLES[criterion]}: not run")
            continue
        failed = [name for name, (ok, _) in entry["parts"].items() if not ok]
        details = "; ".join(f"{name}: {d}" if name != "main" else d
                            for name, (ok, d) in entry["parts"].items() if not ok or len(entry["parts"]) == 1)
        status = "PASS" if entry["ok"] else "FAIL"
        if len(entry["parts"]) > 1:
            details = (f"{len(entry['parts']) - len(failed)}/{len(entry['parts'])} parts pass"
                       + (f"; failing {details}" if failed else ""))
        tr.write_line(f"[{status}] #{criterion} {TITLES[criterion]}: {details}")

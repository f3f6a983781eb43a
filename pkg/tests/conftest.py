import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cubewalls import generators as gen  # noqa: E402


def _corpus():
    out = {}
    for a, b in [(1, 1), (2, 3), (3, 2), (4, 4), (6, 6)]:
        out[f"grid{a}x{b}"] = gen.grid(a, b)
    for n in (1, 2, 3, 4):
        out[f"cube{n}"] = gen.hypercube(n)
    for n, seed in [(2, 0), (9, 1), (30, 2), (64, 3)]:
        out[f"tree{n}"] = gen.random_tree(n, seed)
    out["tripod"] = gen.star(3)
    out["tripod_x_tripod"] = gen.product(gen.star(3), gen.star(3))
    out["path3_x_square"] = gen.product(gen.path(3), gen.hypercube(2))
    for (m, k), seed in [((3, 4), 10), ((5, 7), 11), ((12, 12), 12)]:
        out[f"trees{m}x{k}"] = gen.product(gen.random_tree(m, seed), gen.random_tree(k, seed + 100))
    return out


CORPUS = _corpus()


@pytest.fixture(scope="session")
def corpus():
    return CORPUS


@pytest.fixture(params=sorted(CORPUS), scope="session")
def cat0(request):
    return request.param, CORPUS[request.param]


# --- acceptance summary ---------------------------------------------------------

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None or call.when != "call":
        return
    number, title = mark.args
    failed = call.excinfo is not None
    prev = _criteria.get(number, (title, True))
    _criteria[number] = (title, prev[1] and not failed)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, ok = _criteria[number]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}")

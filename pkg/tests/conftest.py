import pytest

from uvbeta import KernelParams, UVFunctions, solve_ray

# lines recorded by the acceptance tests, echoed in the terminal summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


_grids = {}


@pytest.fixture(scope="session")
def grid():
    """grid(beta, tag) -> cached theta = 0 solution."""
    def get(beta, tag="u"):
        key = (beta, tag)
        if key not in _grids:
            _grids[key] = solve_ray(KernelParams(beta), tag)
        return _grids[key]
    return get


@pytest.fixture(scope="session")
def uv06():
    return UVFunctions(KernelParams(0.6))

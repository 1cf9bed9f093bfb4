import pytest

from gsop.verify import registered, run_checks

# invariants stated for the whole grid that the measurements contradict;
# both are analysed in the decisions ledger and fail in the acceptance run as well
KNOWN_FAILURES = {("spectral", "scaled kernel Cauchy"), ("zeros", "scaled convergence")}


def test_every_module_is_covered():
    modules = {m for m, _ in registered()}
    assert modules == {"numerics", "gegenbauer", "kernels", "sobolev", "spectral", "asymptotics", "zeros", "cli"}
    assert len(registered()) == len(set(registered()))


def test_module_selection():
    res = run_checks(["numerics"])
    assert res and all(r.module == "numerics" for r in res)
    assert all(r.ok for r in res)


@pytest.mark.slow
def test_full_suite():
    seen = []
    results = run_checks(progress=seen.append)
    assert len(results) == len(registered()) == len(seen)
    failed = {(r.module, r.name) for r in results if not r.ok}
    assert failed == KNOWN_FAILURES, [r for r in results if not r.ok]
    assert sum(r.seconds for r in results) < 30 * 60

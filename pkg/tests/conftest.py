import sys
from pathlib import Path
from types import SimpleNamespace

import pytest
from hypothesis import settings

from hwtheta import modops as mo
from hwtheta.ring import make_ring

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("repo", deadline=None, max_examples=60)
settings.load_profile("repo")


def build_corpus():
    R1 = make_ring(["x", "y"], [1, 1], ideal_gens=["x*y*(x-y)"],
                   minimal_primes=[["x"], ["y"], ["x-y"]],
                   hypersurface_split=([], "x*y*(x-y)"), dim=1, reduced=True, name="R1")
    R2 = make_ring(["x", "y"], [1, 1], ideal_gens=["x*y"], minimal_primes=[["x"], ["y"]],
                   hypersurface_split=([], "x*y"), dim=1, reduced=True, name="R2")
    R3 = make_ring(["x", "y", "z"], [4, 5, 6], ideal_gens=["x*z-y^2", "x^3-z^2"],
                   minimal_primes=[[]], hypersurface_split=(["x*z-y^2"], "x^3-z^2"),
                   dim=1, reduced=True, name="R3")
    R4 = make_ring(["x", "y", "z"], [3, 4, 5], ideal_gens=["y^2-x*z", "x^3-y*z", "x^2*y-z^2"],
                   minimal_primes=[[]], dim=1, reduced=True, name="R4")
    R5 = make_ring(["x", "y"], [1, 1], ideal_gens=["x^2"], minimal_primes=[["x"]],
                   hypersurface_split=([], "x^2"), dim=1, reduced=False, name="R5")

    M1 = mo.cyclic_module(R1, ["x"])
    Ny = mo.cyclic_module(R1, ["y"])
    Nxy = mo.cyclic_module(R1, ["x-y"])
    N1 = mo.direct_sum([M1, Ny, Ny])
    k1 = mo.cyclic_module(R1, ["x", "y"])
    F1 = mo.free_module(R1, 1)

    A = mo.cyclic_module(R2, ["x"])
    B = mo.cyclic_module(R2, ["y"])
    A2 = mo.cyclic_module(R2, ["x^2"])
    k2 = mo.cyclic_module(R2, ["x", "y"])
    F2 = mo.free_module(R2, 1)

    M46 = mo.present(R3, [["-z", "x"], ["x^2", "-z"]])
    I = mo.ideal_module(R3, ["x", "z"])
    J = mo.ideal_module(R3, ["x", "y"])
    k3 = mo.cyclic_module(R3, ["x", "y", "z"])

    N4 = mo.present(R4, [["-y", "x", "z"], ["x^2", "-z", "-x*y"], ["-z", "y", "x^2"]])
    omega = mo.ideal_module(R4, ["x", "y"])

    return SimpleNamespace(**locals())


_CORPUS = None


def corpus_objects():
    global _CORPUS
    if _CORPUS is None:
        _CORPUS = build_corpus()
    return _CORPUS


@pytest.fixture(scope="session")
def C():
    return corpus_objects()


def pytest_terminal_summary(terminalreporter):
    import acceptance_log
    if acceptance_log.LINES:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_log.LINES:
            terminalreporter.write_line(line)

import numpy as np
import pytest

from app.core.errors import StructuralError
from app.models.params import AlgebraParams, Profile
from app.services.check_registry import CheckOutcome, CheckRegistry
from app.services.lie_realizations import build_compact_algebra
from app.services.pathgeom import matrix_group
from app.services.rootsys import build_root_system


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture(scope="session")
def a1():
    return build_root_system("A", 1)


@pytest.fixture(scope="session")
def a2():
    return build_root_system("A", 2)


@pytest.fixture(scope="session")
def su2_algebra():
    return build_compact_algebra("A1")


@pytest.fixture(scope="session")
def su2():
    return matrix_group("SU2")


@pytest.fixture
def toy_registry():
    """Small registry with cheap passing, failing and raising checks."""
    toy = CheckRegistry()

    @toy.register("exact-ok", "rootsys", AlgebraParams, tolerance=0.0)
    def exact_ok(params, rng):
        """Always passes."""
        return CheckOutcome(exact={"ok": True}, details={"algebra": params.algebra})

    @toy.register("noisy", "symplin", AlgebraParams, tolerance=1e-3)
    def noisy(params, rng):
        """Residual drawn from the seeded generator."""
        return CheckOutcome(residuals={"draw": float(rng.uniform(0, 1e-4))})

    @toy.register("nan", "symplin", AlgebraParams, tolerance=1.0)
    def nan(params, rng):
        """A non-finite residual never passes."""
        return CheckOutcome(residuals={"value": float("nan")})

    @toy.register("broken", "loopmodel", AlgebraParams, tolerance=1.0)
    def broken(params, rng):
        """Raises."""
        raise StructuralError("boom")

    @toy.register("singular", "cliffspin", AlgebraParams, tolerance=1.0)
    def singular(params, rng):
        """Crashes inside numpy."""
        np.linalg.cholesky(-np.eye(2))
        return CheckOutcome()

    for name in ("exact-ok", "noisy"):
        toy.add_to_suite(Profile.QUICK, name, algebra="A1")
    toy.add_to_suite(Profile.FULL, "exact-ok", algebra="A2")
    toy.add_to_suite(Profile.FULL, "broken")
    toy.add_to_suite(Profile.FULL, "noisy", algebra="A3")
    return toy

import numpy as np
import pytest

from app.core.config import settings
from app.core.errors import InputError, UnknownCheckError
from app.models.params import AlgebraParams, Profile
from app.services.check_catalogue import _convergence_outcome, registry
from app.services.check_registry import CheckOutcome, summary_frame

MODULES = {"rootsys", "cliffspin", "symplin", "loopmodel", "pathgeom"}


class TestToyRegistry:
    def test_duplicate_registration(self, toy_registry):
        with pytest.raises(ValueError):
            toy_registry.register("noisy", "symplin", AlgebraParams, tolerance=0.0)(lambda p, r: CheckOutcome())

    def test_description_from_docstring(self, toy_registry):
        assert toy_registry.get("exact-ok").description == "Always passes."

    def test_catalogue_lists_profiles(self, toy_registry):
        info = {i.name: i for i in toy_registry.catalogue()}
        assert info["exact-ok"].profiles == ["quick", "full"]
        assert info["nan"].profiles == []
        assert "algebra" in info["noisy"].parameters

    def test_unknown_check(self, toy_registry):
        with pytest.raises(UnknownCheckError):
            toy_registry.run_check("missing")

    def test_bad_parameters(self, toy_registry):
        with pytest.raises(InputError):
            toy_registry.run_check("exact-ok", {"algebra": "E8"})
        with pytest.raises(InputError):
            toy_registry.run_check("exact-ok", {"rank": 2})

    def test_grading(self, toy_registry):
        assert toy_registry.run_check("exact-ok").passed
        assert toy_registry.run_check("noisy", seed=3).passed
        assert not toy_registry.run_check("nan").passed

    def test_report_payload(self, toy_registry):
        payload = toy_registry.run_check("exact-ok", {"algebra": "B2"}, seed=7).payload()
        assert payload["schema"] == "1"
        assert payload["pass"] is True
        assert payload["seed"] == 7
        assert payload["parameters"] == {"algebra": "B2"}
        assert "wall_time_ms" in payload
        assert "wall_time_ms" not in toy_registry.run_check("exact-ok").payload(include_timing=False)

    def test_same_seed_same_report(self, toy_registry):
        first = toy_registry.run_check("noisy", seed=11).payload(include_timing=False)
        second = toy_registry.run_check("noisy", seed=11).payload(include_timing=False)
        assert first == second

    def test_suite_keeps_order_and_records_errors(self, toy_registry):
        suite = toy_registry.run_suite(Profile.FULL, seed=5)
        assert [r.check_name for r in suite.reports] == ["exact-ok", "broken", "noisy"]
        assert not suite.passed
        assert suite.reports[1].details["error"] == "StructuralError"
        assert len(suite.failing) == 1 and suite.failing[0].startswith("broken")

    def test_suite_survives_unexpected_exceptions(self, toy_registry):
        toy_registry.add_to_suite(Profile.QUICK, "singular")
        suite = toy_registry.run_suite(Profile.QUICK, seed=5)
        assert [r.check_name for r in suite.reports] == ["exact-ok", "noisy", "singular"]
        assert suite.reports[0].passed and suite.reports[1].passed
        assert suite.reports[2].details["error"] == "LinAlgError"
        assert suite.failing == ["singular {}"]

    def test_suite_is_reproducible(self, toy_registry):
        first = toy_registry.run_suite(Profile.QUICK, seed=2).payload(include_timing=False)
        second = toy_registry.run_suite(Profile.QUICK, seed=2).payload(include_timing=False)
        assert first == second
        assert first["pass"] is True

    def test_summary_frame(self, toy_registry):
        frame = summary_frame(toy_registry.run_suite(Profile.QUICK).reports)
        assert list(frame.columns) == ["check_name", "parameters", "passed", "worst_residual", "wall_time_ms"]
        assert frame["passed"].all()


class TestCatalogue:
    def test_every_module_is_covered(self):
        modules = {info.module for info in registry.catalogue()}
        assert modules == MODULES

    def test_every_suite_entry_validates(self):
        for profile in Profile:
            for name, params in registry.suite(profile):
                registry.validate_params(name, params)

    def test_quick_is_a_subset_of_full(self):
        quick = {name for name, _ in registry.suite(Profile.QUICK)}
        full = {name for name, _ in registry.suite(Profile.FULL)}
        assert quick <= full
        assert full == set(registry.names)

    def test_symplectic_caps_reach_dim_40(self):
        assert registry.validate_params("interp-cs", {"dim": 40, "trials": 200}).dim == 40
        with pytest.raises(InputError):
            registry.validate_params("interp-cs", {"dim": 42})

    def test_full_profile_sweeps(self):
        def entries(name):
            return [registry.validate_params(n, p) for n, p in registry.suite(Profile.FULL) if n == name]

        interp = entries("interp-cs")
        assert sum(p.trials for p in interp) >= 100
        assert {p.dim for p in interp} >= {2, 40}
        polar = entries("polar-retraction")
        assert sum(p.trials for p in polar) >= 100
        assert max(p.dim for p in polar) == 20
        implementer = entries("implementer")
        assert sum(p.trials for p in implementer) >= 50
        assert {p.dim for p in implementer} == {2, 4, 6, 8}
        grid = {(p.modes, p.mu[0]) for p in entries("loop-operators") if p.algebra == "A1" and p.mu}
        assert {N for N, _ in grid} == {16, 32, 64}
        assert len(grid) == 15


@pytest.mark.parametrize("name,params", [
    ("weyl-denominator", {"algebra": "B2"}),
    ("dual-coxeter", {"algebra": "G2"}),
    ("weyl-group", {"algebra": "A2"}),
    ("affine-roots", {"algebra": "A2", "n_max": 2}),
    ("shifted-weight-sum", {"algebra": "A1", "max_length": 6}),
    ("affine-reflections", {"algebra": "A1", "n_max": 2}),
    ("clifford-relations", {"dim": 4}),
    ("implementer", {"dim": 4, "trials": 2}),
    ("intertwiner-parity", {"dim": 4}),
    ("commweil", {"algebra": "A1"}),
    ("graded-character", {"algebra": "A2"}),
    ("subspace-factorization", {"dim": 4, "w_dim": 2}),
    ("interp-cs", {"dim": 4}),
    ("polar-retraction", {"dim": 4}),
    ("hs-equivalence", {"dim": 4}),
    ("metric-isometry", {"dim": 4}),
    ("restricted-norm", {"dim": 4}),
    ("kp-level", {"algebra": "A1"}),
    ("kp-cocycle", {"algebra": "A1", "modes": 12, "trials": 5}),
    ("central-jacobi", {"algebra": "A1", "modes": 9, "trials": 3}),
    ("loop-operators", {"algebra": "A1", "modes": 8}),
    ("coadjoint-metric", {"algebra": "A1", "modes": 4}),
    ("weak-strong", {"algebra": "A1", "modes_list": [8, 16, 24]}),
    ("rmu-smu", {"algebra": "A1", "modes": 6}),
    ("rmu-smu", {"algebra": "A1", "modes": 6, "mu": [2 ** -0.5]}),
    ("varpi-quadrature", {"group": "SU2", "samples": 50}),
    ("varpi-quadrature", {"group": "SU3", "samples": 50, "paths": 3}),
    ("dvarpi", {"group": "SU2", "samples": 100}),
    ("dvarpi", {"group": "SU3", "samples": 100, "paths": 2}),
    ("contraction-loop", {"group": "SU2", "samples": 100, "paths": 2}),
    ("contraction-loop", {"group": "SU3", "samples": 100}),
    ("contraction-group", {"group": "SU2", "samples": 100, "paths": 2}),
    ("contraction-group", {"group": "SU3", "samples": 100}),
    ("twisted-identity", {"group": "SU2", "samples": 100, "automorphism": "inner"}),
    ("twisted-identity", {"group": "SU3", "samples": 100, "automorphism": "conjugation"}),
    ("twisted-moment", {"group": "SU2", "samples": 100, "automorphism": "inner", "paths": 2}),
    ("twisted-moment", {"group": "SU3", "samples": 100, "automorphism": "conjugation"}),
    ("twist-correspondence", {"group": "SU2", "samples": 60}),
    ("varpi-invariance", {"group": "SU2", "samples": 60}),
    ("gauge-equivariance", {"group": "SU2", "samples": 60}),
])
def test_registered_check_passes(name, params):
    report = registry.run_check(name, params, seed=0)
    assert report.passed, (report.residuals, report.exact)


def test_rmu_smu_reports_g_a_dimension():
    report = registry.run_check("rmu-smu", {"algebra": "A1", "modes": 6, "mu": [2 ** -0.5]})
    assert report.details["g_a_dim"] == 3


def test_budget_too_small_for_cocycle():
    with pytest.raises(InputError):
        registry.run_check("kp-cocycle", {"modes": 2})


def test_reports_are_json_ready():
    report = registry.run_check("dual-coxeter", {"algebra": "A2"})
    assert report.details["dual_coxeter"] == 3
    assert isinstance(report.details["root_system"], dict)
    assert np.isfinite(report.wall_time_ms)


CONVERGENCE_ENTRIES = [
    (name, params) for name, params in registry.suite(Profile.FULL)
    if name in ("dvarpi", "contraction-loop", "contraction-group")
]


@pytest.mark.parametrize("seed", [42, 7])
@pytest.mark.parametrize("name,params", CONVERGENCE_ENTRIES)
def test_full_profile_convergence_entries_pass(name, params, seed):
    report = registry.run_check(name, params, seed=seed)
    assert report.passed, (report.exact, report.details["pooled_order"], report.details["order_estimates"])
    assert report.details["pooled_order"] == pytest.approx(2.0, abs=0.3)


def test_full_profile_twisted_moment_inner_su2():
    (params,) = [p for n, p in registry.suite(Profile.FULL) if n == "twisted-moment" and p["group"] == "SU2"]
    report = registry.run_check("twisted-moment", params, seed=42)
    assert report.passed, (report.exact, report.details["order_estimates"])
    assert "order_at_least_band" in report.exact


def test_convergence_grading_is_one_sided_for_twisted_moment():
    def rows(residuals):
        return {"rows": [{"residual": r} for r in residuals], "order_estimate": None}

    cubic = [rows([1e-3, 1.25e-4, 1.5625e-5])]
    assert not _convergence_outcome(cubic).exact["order_in_band"]
    assert _convergence_outcome(cubic, one_sided=True).exact["order_at_least_band"]
    linear = [rows([1e-3, 5e-4, 2.5e-4])]
    assert not _convergence_outcome(linear, one_sided=True).exact["order_at_least_band"]


def test_quick_suite_passes():
    suite = registry.run_suite(Profile.QUICK, seed=0)
    assert suite.passed, suite.failing
    assert len(suite.reports) == len(registry.suite(Profile.QUICK))


def test_weak_strong_band_threshold_comes_from_settings(monkeypatch):
    params = {"algebra": "A1", "sobolev": 0.5, "modes_list": [8, 16, 24]}
    report = registry.run_check("weak-strong", params)
    assert report.exact["stable_band"]
    assert report.details["band_variation"] < settings.BAND_VARIATION_MAX
    monkeypatch.setattr(settings, "BAND_VARIATION_MAX", 0.0)
    assert not registry.run_check("weak-strong", params).exact["stable_band"]

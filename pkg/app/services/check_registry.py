import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple, Type

import numpy as np
import pandas as pd
from pydantic import ValidationError

from app.core.config import settings
from app.core.errors import InputError, UnknownCheckError, VerificationError
from app.models.params import CheckParams, Profile
from app.models.reports import CheckInfo, CheckReport, SuiteReport, SuiteRow
from app.utils.serialization import to_jsonable

logger = logging.getLogger(__name__)


@dataclass
class CheckOutcome:
    residuals: Dict[str, float] = field(default_factory=dict)
    exact: Dict[str, bool] = field(default_factory=dict)
    details: Dict[str, Any] = field(default_factory=dict)


Runner = Callable[[Any, np.random.Generator], CheckOutcome]


@dataclass(frozen=True)
class CheckSpec:
    name: str
    module: str
    description: str
    params_model: Type[CheckParams]
    runner: Runner
    tolerance: float


class CheckRegistry:
    """
    Catalogue of named checks plus the suite profiles that run them.
    Registration order is the order of ``list`` and of suite reports.
    """

    def __init__(self):
        self._checks: Dict[str, CheckSpec] = {}
        self._suites: Dict[Profile, List[Tuple[str, Dict[str, Any]]]] = {p: [] for p in Profile}

    def register(self, name: str, module: str, params_model: Type[CheckParams], tolerance: float,
                 description: str = "") -> Callable[[Runner], Runner]:
        def decorator(runner: Runner) -> Runner:
            if name in self._checks:
                raise ValueError(f"check {name!r} registered twice")
            doc = description or (runner.__doc__ or "").strip().splitlines()[0]
            self._checks[name] = CheckSpec(name, module, doc, params_model, runner, tolerance)
            return runner

        return decorator

    def add_to_suite(self, profile: Profile, name: str, **params) -> None:
        self._suites[profile].append((name, params))

    @property
    def names(self) -> List[str]:
        return list(self._checks)

    def get(self, name: str) -> CheckSpec:
        try:
            return self._checks[name]
        except KeyError:
            raise UnknownCheckError(f"unknown check {name!r}; run 'list' for the catalogue") from None

    def suite(self, profile: Profile) -> List[Tuple[str, Dict[str, Any]]]:
        return list(self._suites[Profile(profile)])

    def catalogue(self) -> List[CheckInfo]:
        out = []
        for spec in self._checks.values():
            profiles = [p.value for p, entries in self._suites.items() if any(n == spec.name for n, _ in entries)]
            out.append(CheckInfo(
                name=spec.name,
                module=spec.module,
                description=spec.description,
                tolerance=spec.tolerance,
                profiles=profiles,
                parameters=spec.params_model.model_json_schema().get("properties", {}),
            ))
        return out

    def validate_params(self, name: str, params: Optional[Dict[str, Any]]) -> CheckParams:
        spec = self.get(name)
        try:
            return spec.params_model(**(params or {}))
        except ValidationError as e:
            raise InputError(f"invalid parameters for {name}: {e}") from e

    def run_check(self, name: str, params: Optional[Dict[str, Any]] = None, seed: Optional[int] = None) -> CheckReport:
        """Validates, runs and grades one check. Verification errors propagate to the caller."""
        spec = self.get(name)
        seed = settings.DEFAULT_SEED if seed is None else int(seed)
        validated = self.validate_params(name, params)
        rng = np.random.default_rng(seed)

        logger.info(f"🔍 Running {name} with {validated.model_dump()} (seed {seed})")
        start = time.perf_counter()
        outcome = spec.runner(validated, rng)
        elapsed = (time.perf_counter() - start) * 1000

        residuals = {k: float(v) for k, v in outcome.residuals.items()}
        exact = {k: bool(v) for k, v in outcome.exact.items()}
        passed = all(np.isfinite(v) and v <= spec.tolerance for v in residuals.values()) and all(exact.values())
        report = CheckReport(
            check_name=name,
            parameters=to_jsonable(validated.model_dump()),
            residuals=residuals,
            exact=exact,
            tolerance=spec.tolerance,
            passed=passed,
            seed=seed,
            wall_time_ms=round(elapsed, 3),
            details=to_jsonable(outcome.details),
        )
        if passed:
            logger.info(f"✅ {name} passed in {elapsed:.1f} ms")
        else:
            logger.warning(f"⚠️ {name} failed: residuals {residuals}, exact {exact}")
        return report

    def _failed_member(self, name: str, params: Dict[str, Any], seed: int, error: Exception) -> CheckReport:
        spec = self._checks.get(name)
        return CheckReport(
            check_name=name,
            parameters=to_jsonable(params),
            tolerance=spec.tolerance if spec else 0.0,
            passed=False,
            seed=seed,
            details={"error": type(error).__name__, "message": str(error)},
        )

    def _run_member(self, entry: Tuple[int, str, Dict[str, Any], int]) -> CheckReport:
        """One suite member; any exception becomes a failing report so the suite finishes."""
        index, name, params, seed = entry
        try:
            return self.run_check(name, params, seed)
        except VerificationError as e:
            logger.error(f"❌ Suite member {index} ({name}) raised: {e}")
            return self._failed_member(name, params, seed, e)
        except Exception as e:
            logger.exception(f"❌ Suite member {index} ({name}) crashed: {type(e).__name__}: {e}")
            return self._failed_member(name, params, seed, e)

    def run_suite(self, profile: Profile, seed: Optional[int] = None) -> SuiteReport:
        """Runs a profile concurrently; reports keep registration order."""
        profile = Profile(profile)
        seed = settings.DEFAULT_SEED if seed is None else int(seed)
        entries = self.suite(profile)
        children = np.random.SeedSequence(seed).spawn(len(entries))
        tasks = [
            (i, name, params, int(child.generate_state(1)[0]))
            for i, ((name, params), child) in enumerate(zip(entries, children))
        ]
        logger.info(f"🚀 Starting {profile.value} suite: {len(tasks)} checks, seed {seed}")
        with ThreadPoolExecutor(max_workers=settings.MAX_CONCURRENT_CHECKS) as pool:
            reports = list(pool.map(self._run_member, tasks))
        failing = [f"{r.check_name} {r.parameters}" for r in reports if not r.passed]
        logger.info(f"🎉 Suite {profile.value} finished: {len(reports) - len(failing)}/{len(reports)} passed")
        return SuiteReport(profile=profile.value, seed=seed, passed=not failing, failing=failing, reports=reports)


def summary_frame(reports: List[CheckReport]) -> pd.DataFrame:
    rows = [
        SuiteRow(
            check_name=r.check_name,
            parameters=", ".join(f"{k}={v}" for k, v in r.parameters.items() if v is not None),
            passed=r.passed,
            worst_residual=max(r.residuals.values()) if r.residuals else None,
            wall_time_ms=r.wall_time_ms,
        ).model_dump()
        for r in reports
    ]
    return pd.DataFrame(rows, columns=list(SuiteRow.model_fields))

"""TOML problem files.

::

    [gas]
    kappa = 5.0
    gamma = 2.0

    [junction]
    areas = [1.0, 1.0, 1.0]
    coupling = "artificial_density"
    initial = [[1.0, -1.0], [1.0, 0.5], [1.0, 0.5]]   # (rho, rho*u)

    [simulation]            # optional
    cells = 400
    length = 1.0
    cfl = 0.9
    t_end = 0.15

    [levelset]              # optional
    base_state = [1.0, 0.0]  # (rho, rho*u)
    quantity = ["pressure", "momentum_flux", "bernoulli", "artificial_density"]
    range = [0.01, 3.0]
"""
from __future__ import annotations

import math
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .errors import DomainError, ProblemFileError
from .gas import GasLaw, State
from .junction import CouplingKind, JunctionProblem

LEVELSET_QUANTITIES = ("pressure", "momentum_flux", "bernoulli", "artificial_density")


@dataclass(frozen=True)
class SimulationSection:
    cells: int = 400
    length: float = 1.0
    cfl: float = 0.9
    t_end: float = 0.1
    far_end: str = "outflow"
    output_every: int = 0


@dataclass(frozen=True)
class LevelsetSection:
    base_state: State = State(1.0, 0.0)
    quantities: tuple = LEVELSET_QUANTITIES
    rho_range: tuple = (0.01, 3.0)
    points: int = 200
    velocity_range: tuple = (-3.0, 3.0)


@dataclass
class ProblemFile:
    law: GasLaw
    junction: Optional[JunctionProblem] = None
    simulation: Optional[SimulationSection] = None
    levelset: Optional[LevelsetSection] = None
    source: Optional[str] = None
    extra: dict = field(default_factory=dict)


def _number(value, where: str, positive: bool = False) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ProblemFileError(f"{where}: expected a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise ProblemFileError(f"{where}: must be finite")
    if positive and not value > 0.0:
        raise ProblemFileError(f"{where}: must be positive, got {value}")
    return value


def _pair(value, where: str) -> tuple[float, float]:
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise ProblemFileError(f"{where}: expected a pair [rho, momentum], got {value!r}")
    return _number(value[0], f"{where}[0]"), _number(value[1], f"{where}[1]")


def _state(value, where: str) -> State:
    rho, mom = _pair(value, where)
    if rho < 0.0:
        raise ProblemFileError(f"{where}: negative density {rho}")
    if rho == 0.0 and mom != 0.0:
        raise ProblemFileError(f"{where}: vacuum with nonzero momentum is not an admissible state")
    return State.from_conserved(rho, mom)


def _table(doc: dict, name: str, required: bool) -> Optional[dict]:
    if name not in doc:
        if required:
            raise ProblemFileError(f"missing [{name}] section")
        return None
    sec = doc[name]
    if not isinstance(sec, dict):
        raise ProblemFileError(f"[{name}] must be a table")
    return sec


def parse_problem(doc: dict, source: Optional[str] = None) -> ProblemFile:
    gas = _table(doc, "gas", required=True)
    for key in ("kappa", "gamma"):
        if key not in gas:
            raise ProblemFileError(f"gas.{key}: missing")
    kappa = _number(gas["kappa"], "gas.kappa", positive=True)
    gamma = _number(gas["gamma"], "gas.gamma")
    if not 1.0 < gamma < 3.0:
        raise ProblemFileError(f"gas.gamma: must lie in (1, 3), got {gamma}")
    law = GasLaw(kappa, gamma)
    out = ProblemFile(law, source=source)

    jsec = _table(doc, "junction", required=False)
    if jsec is not None:
        initial = jsec.get("initial")
        if not isinstance(initial, list) or not initial:
            raise ProblemFileError("junction.initial: expected a non-empty list of [rho, momentum] pairs")
        states = tuple(_state(v, f"junction.initial[{i}]") for i, v in enumerate(initial))
        areas = jsec.get("areas", [1.0] * len(states))
        if not isinstance(areas, list):
            raise ProblemFileError("junction.areas: expected a list")
        if len(areas) != len(states):
            raise ProblemFileError(f"junction.areas: {len(areas)} entries for {len(states)} pipes")
        areas = tuple(_number(a, f"junction.areas[{i}]", positive=True) for i, a in enumerate(areas))
        try:
            coupling = CouplingKind.parse(str(jsec.get("coupling", "artificial_density")))
        except ValueError:
            raise ProblemFileError(f"junction.coupling: unknown coupling {jsec.get('coupling')!r}") from None
        out.junction = JunctionProblem(law, areas, states, coupling)

    ssec = _table(doc, "simulation", required=False)
    if ssec is not None:
        cells = ssec.get("cells", 400)
        if isinstance(cells, bool) or not isinstance(cells, int) or cells < 2:
            raise ProblemFileError(f"simulation.cells: expected an integer >= 2, got {cells!r}")
        cfl = _number(ssec.get("cfl", 0.9), "simulation.cfl", positive=True)
        if cfl > 1.0:
            raise ProblemFileError(f"simulation.cfl: must not exceed 1, got {cfl}")
        far_end = ssec.get("far_end", "outflow")
        if far_end not in ("outflow", "wall"):
            raise ProblemFileError(f"simulation.far_end: expected 'outflow' or 'wall', got {far_end!r}")
        every = ssec.get("output_every", 0)
        if isinstance(every, bool) or not isinstance(every, int) or every < 0:
            raise ProblemFileError(f"simulation.output_every: expected a nonnegative integer, got {every!r}")
        t_end = _number(ssec.get("t_end", 0.1), "simulation.t_end")
        if t_end < 0.0:
            raise ProblemFileError("simulation.t_end: must be nonnegative")
        out.simulation = SimulationSection(
            cells, _number(ssec.get("length", 1.0), "simulation.length", positive=True), cfl, t_end, far_end, every
        )

    lsec = _table(doc, "levelset", required=False)
    if lsec is not None:
        base = _state(lsec.get("base_state", [1.0, 0.0]), "levelset.base_state")
        if base.is_vacuum:
            raise ProblemFileError("levelset.base_state: must not be vacuum")
        q = lsec.get("quantity", list(LEVELSET_QUANTITIES))
        q = [q] if isinstance(q, str) else q
        if not isinstance(q, list) or not q:
            raise ProblemFileError("levelset.quantity: expected a name or a list of names")
        for name in q:
            if name not in LEVELSET_QUANTITIES:
                raise ProblemFileError(f"levelset.quantity: unknown quantity {name!r}")
        lo, hi = _pair(lsec.get("range", [0.01, 3.0]), "levelset.range")
        if not 0.0 < lo < hi:
            raise ProblemFileError(f"levelset.range: need 0 < lo < hi, got [{lo}, {hi}]")
        points = lsec.get("points", 200)
        if isinstance(points, bool) or not isinstance(points, int) or points < 3:
            raise ProblemFileError(f"levelset.points: expected an integer >= 3, got {points!r}")
        vlo, vhi = _pair(lsec.get("velocity_range", [-3.0, 3.0]), "levelset.velocity_range")
        if not vlo < vhi:
            raise ProblemFileError("levelset.velocity_range: need lo < hi")
        out.levelset = LevelsetSection(base, tuple(q), (lo, hi), points, (vlo, vhi))
    return out


def load_problem(path) -> ProblemFile:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ProblemFileError(f"cannot read {path}: {exc.strerror or exc}") from exc
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ProblemFileError(f"{path}: invalid TOML: {exc}") from exc
    try:
        return parse_problem(doc, source=str(path))
    except DomainError as exc:
        if isinstance(exc, ProblemFileError):
            raise
        raise ProblemFileError(f"{path}: {exc}") from exc

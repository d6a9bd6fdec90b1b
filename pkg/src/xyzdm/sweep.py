"""Parameter sweeps, figure presets, CSV output and the randomized self-test."""

from __future__ import annotations

import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import NumericalError
from .measures import (
    brute_force_min,
    closed_form_m_diag,
    closed_form_w_diag,
    lqfi,
    lqfi_matrix,
    lqu,
    lqu_matrix,
)
from .model import (
    PARAM_FIELDS,
    ModelParams,
    closed_form_elements,
    hamiltonian,
    phase_aligned,
    thermal_state,
)

CSV_HEADER = "jx,jy,jz,dz,temp,lqfi,lqu,w11,w22,w33,m11,m22,m33"


@dataclass(frozen=True)
class SweepSpec:
    fixed: ModelParams
    swept: str
    start: float
    stop: float
    points: int
    curve_field: str | None = None
    curve_values: tuple[float, ...] = ()
    headline: str = "lqfi"

    def __post_init__(self):
        if self.swept not in PARAM_FIELDS:
            raise ValueError(f"swept field must be one of {PARAM_FIELDS}, got {self.swept!r}")
        if not self.start < self.stop:
            raise ValueError(f"sweep start ({self.start}) must be < stop ({self.stop})")
        if self.points < 2:
            raise ValueError(f"points must be >= 2, got {self.points}")
        if self.swept == "temp" and self.start <= 0:
            raise ValueError("temp sweep must start above 0")
        if self.curve_field is not None:
            if self.curve_field not in PARAM_FIELDS:
                raise ValueError(f"curve field must be one of {PARAM_FIELDS}, got {self.curve_field!r}")
            if self.curve_field == self.swept:
                raise ValueError("curve field must differ from the swept field")
            if not self.curve_values:
                raise ValueError("curve field given without values")
            if self.curve_field == "temp" and min(self.curve_values) <= 0:
                raise ValueError("curve temperatures must be > 0")

    def grid(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.points)

    def parameter_points(self) -> list[ModelParams]:
        curves = self.curve_values if self.curve_field else (None,)
        out = []
        for c in curves:
            base = self.fixed if c is None else self.fixed.replace(**{self.curve_field: float(c)})
            out.extend(base.replace(**{self.swept: float(x)}) for x in self.grid())
        return out


@dataclass(frozen=True)
class SweepRow:
    jx: float
    jy: float
    jz: float
    dz: float
    temp: float
    lqfi: float
    lqu: float
    w11: float
    w22: float
    w33: float
    m11: float
    m22: float
    m33: float

    def values(self) -> tuple[float, ...]:
        return tuple(getattr(self, name) for name in CSV_HEADER.split(","))


def eval_point(p: ModelParams) -> SweepRow:
    rho = thermal_state(p)
    elements = closed_form_elements(p)
    return SweepRow(
        *p.as_tuple(),
        lqfi(rho).value,
        lqu(rho).value,
        *closed_form_w_diag(elements),
        *closed_form_m_diag(elements),
    )


def _eval_located(p: ModelParams) -> SweepRow:
    try:
        return eval_point(p)
    except (ValueError, NumericalError) as exc:
        raise type(exc)(f"at jx={p.jx}, jy={p.jy}, jz={p.jz}, dz={p.dz}, temp={p.temp}: {exc}") from exc


def run_sweep(spec: SweepSpec, workers: int = 1) -> list[SweepRow]:
    """Evaluate every grid point, curve by curve, swept value ascending.

    With ``workers > 1`` points are farmed out to a process pool; results are
    collected by position, so the output does not depend on scheduling.
    """
    points = spec.parameter_points()
    if workers <= 1:
        return [_eval_located(p) for p in points]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_eval_located, points, chunksize=max(1, len(points) // (4 * workers))))


# Figure presets. Fixed parameters are those of the reference sweeps; the curve
# families are defaults of this package and can be overridden.
TEMP_RANGE = (0.05, 5.0)
COUPLING_RANGE = (-3.0, 3.0)
DZ_RANGE = (0.0, 3.0)
PRESET_POINTS = 200
JZ_FAMILY = (-1.0, -0.5, 0.2, 0.5, 1.0)
TEMP_FAMILY = (0.5, 1.0, 2.0)

_PANELS = {
    # panel: (fixed couplings, swept field, range)
    "a": ({"jz": -1.0, "jy": -0.5, "dz": 1.0}, "jx", COUPLING_RANGE),
    "b": ({"jx": -1.0, "jz": 0.2, "dz": 1.0}, "jy", COUPLING_RANGE),
    "c": ({"jx": -1.0, "jy": -0.5, "dz": 1.0}, "jz", COUPLING_RANGE),
    "d": ({"jx": -1.0, "jy": -1.0, "jz": 0.2}, "dz", DZ_RANGE),
}


def _temperature_preset(headline: str) -> SweepSpec:
    return SweepSpec(
        fixed=ModelParams(jx=-1.0, jy=-0.5, dz=1.0),
        swept="temp",
        start=TEMP_RANGE[0],
        stop=TEMP_RANGE[1],
        points=PRESET_POINTS,
        curve_field="jz",
        curve_values=JZ_FAMILY,
        headline=headline,
    )


def _panel_preset(panel: str, headline: str) -> SweepSpec:
    fixed, swept, (lo, hi) = _PANELS[panel]
    return SweepSpec(
        fixed=ModelParams(**fixed),
        swept=swept,
        start=lo,
        stop=hi,
        points=PRESET_POINTS,
        curve_field="temp",
        curve_values=TEMP_FAMILY,
        headline=headline,
    )


FIGURE_IDS = ("fig1", "fig2a", "fig2b", "fig2c", "fig2d", "fig3", "fig4a", "fig4b", "fig4c", "fig4d")


def figure_preset(fig_id: str) -> SweepSpec:
    """Sweep definition for one figure: fig1/fig3 sweep temperature, fig2x/fig4x sweep a coupling.

    fig1 and fig2x have LQFI as the headline column; fig3 and fig4x have LQU.
    """
    if fig_id in ("fig1", "fig3"):
        return _temperature_preset("lqfi" if fig_id == "fig1" else "lqu")
    if fig_id in FIGURE_IDS:
        return _panel_preset(fig_id[-1], "lqfi" if fig_id.startswith("fig2") else "lqu")
    raise ValueError(f"unknown figure id {fig_id!r}; expected one of {', '.join(FIGURE_IDS)}")


def _fmt(x: float) -> str:
    return f"{float(x) + 0.0:.12g}"


def format_csv(rows: list[SweepRow]) -> str:
    buf = io.StringIO()
    emit_csv(rows, buf)
    return buf.getvalue()


def emit_csv(rows: list[SweepRow], dest) -> None:
    """Write rows under the fixed header, 12 significant digits, '\\n' line endings."""
    if not rows:
        raise ValueError("no rows to write")
    lines = [CSV_HEADER]
    lines.extend(",".join(_fmt(x) for x in row.values()) for row in rows)
    try:
        dest.write("\n".join(lines) + "\n")
    except OSError as exc:
        name = getattr(dest, "name", repr(dest))
        raise OSError(f"failed writing CSV to {name}: {exc}") from exc


# Self-test

ORACLE_TOL = 1e-4
CLOSED_FORM_TOL = 1e-10
# √ρ has error up to ~√(n·eps) ≈ 3e-8 at eigenvalues below roundoff resolution
CLOSED_FORM_SQRT_TOL = 1e-7
OFFDIAG_TOL = 1e-12
SANDWICH_TOL = 1e-10
ORDERING_TOL = 1e-10
TRACE_TOL = 1e-12
PSD_TOL = 1e-12
COMMUTATOR_TOL = 1e-10
BLOCK_SPECTRUM_TOL = 1e-10
ORACLE_RESOLUTION = 10_000


def random_params(rng: np.random.Generator) -> ModelParams:
    jx, jy, jz = rng.uniform(-2.0, 2.0, size=3)
    return ModelParams(
        jx=float(jx), jy=float(jy), jz=float(jz),
        dz=float(rng.uniform(0.0, 2.0)),
        temp=float(rng.uniform(0.05, 5.0)),
    )


def draw_params(draws: int, seed: int) -> list[ModelParams]:
    rng = np.random.default_rng(seed)
    return [random_params(rng) for _ in range(draws)]


@dataclass
class Check:
    name: str
    tolerance: float
    worst: float = 0.0
    gating: bool = True
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.worst <= self.tolerance

    def update(self, deviation: float) -> None:
        self.worst = max(self.worst, float(deviation))


@dataclass
class SelfTestReport:
    draws: int
    seed: int
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks if c.gating)

    def format(self) -> str:
        lines = [f"selftest draws={self.draws} seed={self.seed}"]
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            if not c.gating:
                status = "INFO"
            line = f"{status} {c.name}: worst={c.worst:.3e} tol={c.tolerance:.1e}"
            if c.note:
                line += f" ({c.note})"
            lines.append(line)
        lines.append("overall: " + ("PASS" if self.passed else "FAIL"))
        return "\n".join(lines)


def point_deviations(p: ModelParams, resolution: int = ORACLE_RESOLUTION) -> dict[str, float]:
    """All self-test deviations for one parameter point; each must be <= its tolerance."""
    rho = thermal_state(p)
    h = hamiltonian(p)
    e = closed_form_elements(p)
    w = lqfi_matrix(rho)
    m = lqu_matrix(rho)
    q = lqfi(rho).value
    u = lqu(rho).value
    w_cf = np.array(closed_form_w_diag(e))
    m_cf = np.array(closed_form_m_diag(e))
    aligned = phase_aligned(rho)
    wa = lqfi_matrix(aligned)
    ma = lqu_matrix(aligned)
    off = ~np.eye(3, dtype=bool)
    lam = np.linalg.eigvalsh(rho)
    av = abs(e.v)
    blocks = np.sort([e.r + e.s, e.r - e.s, e.u + av, e.u - av])
    return {
        "oracle_fisher": abs(q - brute_force_min(rho, "fisher", resolution).value),
        "oracle_skew": abs(u - brute_force_min(rho, "skew", resolution).value),
        "closed_form_w_spectrum": np.max(np.abs(np.sort(w_cf) - np.linalg.eigvalsh(w))),
        "closed_form_m_spectrum": np.max(np.abs(np.sort(m_cf) - np.linalg.eigvalsh(m))),
        "closed_form_w_aligned": np.max(np.abs(np.diag(wa) - w_cf)),
        "closed_form_m_aligned": np.max(np.abs(np.diag(ma) - m_cf)),
        "aligned_offdiag": max(np.max(np.abs(wa[off])), np.max(np.abs(ma[off]))),
        "computational_offdiag": max(np.max(np.abs(w[off])), np.max(np.abs(m[off]))),
        "sandwich_lower": u - q,
        "sandwich_upper": q - 2.0 * u,
        "ordering": -float(np.min(np.linalg.eigvalsh(m - w))),
        "trace": abs(np.trace(rho).real - 1.0),
        "psd": -float(lam[0]),
        "commutator": float(np.max(np.abs(rho @ h - h @ rho))),
        "block_spectrum": float(np.max(np.abs(np.sort(lam) - blocks))),
    }


def self_test(draws: int, seed: int, resolution: int = ORACLE_RESOLUTION) -> SelfTestReport:
    if draws < 1:
        raise ValueError(f"draws must be >= 1, got {draws}")
    checks = {
        "oracle_fisher": Check("oracle-equivalence lqfi vs brute force", ORACLE_TOL),
        "oracle_skew": Check("oracle-equivalence lqu vs brute force", ORACLE_TOL),
        "closed_form_w_spectrum": Check("closed-form W vs spectrum of W", CLOSED_FORM_TOL),
        "closed_form_m_spectrum": Check(
            "closed-form M vs spectrum of M", CLOSED_FORM_SQRT_TOL, note="bounded by sqrt conditioning"
        ),
        "closed_form_w_aligned": Check("closed-form W vs diagonal in phase-aligned frame", CLOSED_FORM_TOL),
        "closed_form_m_aligned": Check(
            "closed-form M vs diagonal in phase-aligned frame", CLOSED_FORM_SQRT_TOL,
            note="bounded by sqrt conditioning",
        ),
        "aligned_offdiag": Check("W/M off-diagonals in phase-aligned frame", OFFDIAG_TOL),
        "sandwich_lower": Check("sandwich lqu <= lqfi", 0.0),
        "sandwich_upper": Check("sandwich lqfi <= 2 lqu", SANDWICH_TOL),
        "ordering": Check("M - W positive semidefinite", ORDERING_TOL),
        "trace": Check("thermal state unit trace", TRACE_TOL),
        "psd": Check("thermal state PSD", PSD_TOL),
        "commutator": Check("[rho, H] = 0", COMMUTATOR_TOL),
        "block_spectrum": Check("rho spectrum = {r±s, u±|v|}", BLOCK_SPECTRUM_TOL),
        "computational_offdiag": Check(
            "W/M off-diagonals in computational basis",
            OFFDIAG_TOL,
            gating=False,
            note="nonzero whenever Dz != 0; the measures are unaffected",
        ),
    }
    for p in draw_params(draws, seed):
        for key, dev in point_deviations(p, resolution).items():
            checks[key].update(dev)
    return SelfTestReport(draws=draws, seed=seed, checks=list(checks.values()))

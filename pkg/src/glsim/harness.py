"""Reproducible experiment runner: config parsing, dispatch, CSV tables,
and run manifests.

Config files are flat key-value text with section headers (INI style):

    [experiment]
    name = gap
    seed = 7

    [model]
    builtin = tfim:3          # or: hamiltonian = model.txt / circuit = circ.txt

    [params]
    beta = 0 0.02 0.05 0.1

Every bound check in a table carries measured, bound, and margin columns
(margin = bound − measured, positive is passing); all floats are printed with
17 significant digits so identical configs reproduce identical bytes.
"""

from __future__ import annotations

import configparser
import csv
import io
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .adiabatic import derivative_bounds, derivative_norms, evolve_adiabatic
from .clock import (
    Gate, QuantumCircuit, build_clock, cheeger_constant, clock_jump_set,
    verify_move_lemma,
)
from .filters import FilterSpec
from .lindblad import (
    assemble_lindbladian, gibbs_state, single_site_pauli_jumps,
)
from .lowtemp import (
    generator_distance, ground_overlap_experiment, herbst_overlap_bound,
    laplace_curve, perturbation_bound_infinite, zero_temp_generator,
)
from .modelio import ParseError, load_circuit, load_model
from .operators import (
    PAULI_X, InteractionList, build_hamiltonian, embed, tfim_chain,
)
from .spectral import diagonalize
from .tilde import mixing_curve, spectral_gap, telescopic_norms, tilde_transform

EXPERIMENTS = (
    "gap", "mix", "telescopic", "adiabatic", "lowtemp-distance",
    "laplace", "cheeger", "overlap",
)

LAPLACE_COMPARE_TOL = 1e-9


def list_checks() -> tuple[tuple[str, str], ...]:
    """Stable catalog of all acceptance checks."""
    return (
        ("stationarity-gibbs", "thermal state is an exact fixed point of the assembled generator"),
        ("kms-hermiticity", "tilde generator is Hermitian and isospectral to the generator"),
        ("beta0-depolarizing", "infinite-temperature limit is the product depolarizer with gap 1/(√2e^¼)"),
        ("theorem1-halfgap", "small-β chain gap stays above half the depolarizing gap"),
        ("telescopic-decay", "ball-increment norms decay within the quasi-locality bound"),
        ("metropolis-coefficients", "Metropolis coefficients match closed forms and low-temperature bounds"),
        ("perturbation-beta-infinity", "finite-β generator approaches the zero-temperature limit within the continuity bound"),
        ("clock-level-dimensions", "clock level dimensions equal binom(T+1, 2i+1)"),
        ("lemma-cheeger-clock", "clock move lemma holds exhaustively and conductance beats min{1, 6/(T−1)²}"),
        ("laplace-herbst-bound", "Laplace transform obeys the Cheeger-driven bound; Herbst dominates leakage"),
        ("history-state-measurement", "frustration-free terms annihilate the history state; measurement accepts with ⟨η|ρ|η⟩"),
        ("overlap-growth", "dissipative evolution grows the ground-state overlap from the maximally mixed state"),
        ("adiabatic-preparation", "adiabatic schedule reaches the purified thermal state within the derivative bounds"),
        ("determinism-tables", "identical config and seed reproduce byte-identical tables"),
    )


@dataclass
class ExperimentConfig:
    experiment: str
    seed: int = 0
    out_dir: str = "."
    jobs: int = 1
    model: InteractionList | None = None
    circuit: "QuantumCircuit | None" = None
    clock_T: int | None = None
    params: dict = field(default_factory=dict)
    raw_text: str = ""

    def grid(self, key: str, default=None, cast=float) -> list:
        if key not in self.params:
            if default is None:
                raise KeyError(f"missing parameter {key!r}")
            return list(default)
        return [cast(tok) for tok in str(self.params[key]).split()]

    def scalar(self, key: str, default=None, cast=float):
        if key not in self.params:
            if default is None:
                raise KeyError(f"missing parameter {key!r}")
            return default
        return cast(self.params[key])


def parse_config(text: str, path: str = "<config>") -> ExperimentConfig:
    parser = configparser.ConfigParser()
    try:
        parser.read_string(text, source=path)
    except configparser.Error as exc:
        raise ParseError(path, getattr(exc, "lineno", 0) or 0, str(exc)) from None
    if "experiment" not in parser or "name" not in parser["experiment"]:
        raise ParseError(path, 1, "missing [experiment] section with 'name'")
    name = parser["experiment"]["name"].strip()
    if name not in EXPERIMENTS:
        raise ParseError(path, 1, f"unknown experiment {name!r}; choose from {EXPERIMENTS}")
    cfg = ExperimentConfig(experiment=name, raw_text=text)
    cfg.seed = parser["experiment"].getint("seed", 0)
    cfg.out_dir = parser["experiment"].get("out", ".")
    model_sec = parser["model"] if "model" in parser else {}
    if "builtin" in model_sec:
        spec = model_sec["builtin"].strip()
        kind, _, arg = spec.partition(":")
        if kind == "tfim":
            cfg.model = tfim_chain(int(arg))
        elif kind == "clock":
            cfg.clock_T = int(arg)
        elif kind == "single-x-circuit":
            n, _, T = arg.partition(":")
            n, T = int(n), int(T)
            eye = np.eye(2, dtype=complex)
            gates = [Gate((0,), PAULI_X)] + [Gate((0,), eye)] * (T - 1)
            cfg.circuit = QuantumCircuit(n, tuple(gates))
        else:
            raise ParseError(path, 1, f"unknown builtin model {spec!r}")
    if "hamiltonian" in model_sec:
        cfg.model = load_model(model_sec["hamiltonian"])
    if "circuit" in model_sec:
        cfg.circuit = load_circuit(model_sec["circuit"])
    if "params" in parser:
        cfg.params = dict(parser["params"])
    return cfg


def load_config(path) -> ExperimentConfig:
    with open(path) as fh:
        return parse_config(fh.read(), str(path))


def _fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".17g")


@dataclass
class CheckResult:
    check: str
    measured: float
    bound: float
    passed: bool
    tolerance: float = 0.0


@dataclass
class RunManifest:
    experiment: str
    seed: int
    version: str
    started: str
    finished: str
    config_echo: str
    tables: list
    checks: list

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> str:
        return json.dumps(
            {
                "experiment": self.experiment,
                "seed": self.seed,
                "artifact_version": self.version,
                "started": self.started,
                "finished": self.finished,
                "config": self.config_echo,
                "tables": self.tables,
                "checks": [
                    {
                        "check": c.check,
                        "measured": _fmt(c.measured),
                        "bound": _fmt(c.bound),
                        "tolerance": _fmt(c.tolerance),
                        "verdict": "pass" if c.passed else "fail",
                    }
                    for c in self.checks
                ],
            },
            indent=2,
        )


def _write_table(out_dir: Path, name: str, header: list[str], rows: list[list]) -> str:
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / f"{name}.csv"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(x) if not isinstance(x, str) else x for x in row])
    path.write_text(buf.getvalue())
    return str(path)


def _map(fn, items, jobs: int):
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def _require_model(cfg: ExperimentConfig) -> InteractionList:
    if cfg.model is None:
        raise ValueError(f"experiment {cfg.experiment!r} needs a Hamiltonian model")
    return cfg.model


def _run_gap(cfg, out_dir, tables, checks):
    spec = _require_model(cfg)
    betas = cfg.grid("beta", default=[0.0, 0.02, 0.05, 0.1])
    H = build_hamiltonian(spec)
    jumps = single_site_pauli_jumps(spec.n_sites)
    half_gap = 1.0 / (2.0 * np.sqrt(2.0) * np.exp(0.25))

    def one(beta):
        L = assemble_lindbladian(H, jumps, FilterSpec("gaussian", beta))
        T = tilde_transform(L, gibbs_state(H, beta), beta)
        gap, kdim = spectral_gap(T)
        return beta, gap, kdim

    rows = []
    for beta, gap, kdim in _map(one, betas, cfg.jobs):
        margin = gap - half_gap
        rows.append([beta, gap, kdim, half_gap, margin])
        if beta <= 0.1:
            checks.append(CheckResult("theorem1-halfgap", gap, half_gap, gap >= half_gap))
    tables.append(_write_table(out_dir, "gap", ["beta", "gap", "kernel_dim", "halfgap_bound", "margin"], rows))


def _run_mix(cfg, out_dir, tables, checks):
    spec = _require_model(cfg)
    beta = cfg.scalar("beta", 0.3)
    times = cfg.grid("times", default=[0.0, 1.0, 5.0, 20.0])
    H = build_hamiltonian(spec)
    jumps = single_site_pauli_jumps(spec.n_sites)
    L = assemble_lindbladian(H, jumps, FilterSpec("gaussian", beta))
    sigma = gibbs_state(H, beta)
    gap, _ = spectral_gap(tilde_transform(L, sigma, beta))
    rho0 = np.zeros_like(sigma)
    rho0[0, 0] = 1.0
    dists = mixing_curve(L, sigma, rho0, times)
    inv_norm = float(1.0 / np.linalg.eigvalsh(sigma)[0])
    rows = []
    for t, d in zip(times, dists):
        envelope = 2.0 * inv_norm * np.exp(-gap * t)
        rows.append([t, d, envelope, envelope - d])
        checks.append(CheckResult("theorem1-halfgap", d, envelope, d <= envelope))
    tables.append(_write_table(out_dir, "mix", ["t", "trace_distance", "envelope_bound", "margin"], rows))


def _run_telescopic(cfg, out_dir, tables, checks):
    spec = _require_model(cfg)
    beta = cfg.scalar("beta", 0.05)
    site = int(cfg.scalar("site", spec.n_sites // 2, cast=int))
    r_max = int(cfg.scalar("r_max", 2, cast=int))
    jump = embed(PAULI_X, (site,), spec.n_sites)
    rep = telescopic_norms(spec, site, jump, beta, r_max, jump_label=f"X{site}")
    rows = []
    for r, m, b in zip(rep.radii, rep.measured, rep.bound):
        rows.append([r, m, b, b - m])
        checks.append(CheckResult("telescopic-decay", m, b, m <= b))
    tables.append(_write_table(out_dir, "telescopic", ["r", "measured_2to2", "bound", "margin"], rows))


def _run_adiabatic(cfg, out_dir, tables, checks):
    spec = _require_model(cfg)
    beta = cfg.scalar("beta", 0.2)
    T_ads = cfg.grid("t_ad", default=[1.0, 10.0, 100.0])
    steps = int(cfg.scalar("steps", 2000, cast=int))
    rows = []
    prev = 0.0
    for T_ad in T_ads:
        res = evolve_adiabatic(spec, beta, T_ad, steps=max(steps, int(20 * T_ad)))
        rows.append([T_ad, res.final_fidelity, res.norm_drift])
        checks.append(CheckResult(
            "adiabatic-preparation", prev - 1e-3, res.final_fidelity,
            res.final_fidelity >= prev - 1e-3, tolerance=1e-3,
        ))
        prev = res.final_fidelity
    checks.append(CheckResult("adiabatic-preparation", prev, 0.99, prev >= 0.99))
    bf, bs = derivative_bounds(spec, beta)
    drows = []
    for s in cfg.grid("s_samples", default=[0.25, 0.5, 0.75]):
        f, sd = derivative_norms(spec, beta, s)
        drows.append([s, f, bf, bf - f, sd, bs, bs - sd])
        checks.append(CheckResult("adiabatic-preparation", f, bf, f <= bf))
        checks.append(CheckResult("adiabatic-preparation", sd, bs, sd <= bs))
    tables.append(_write_table(out_dir, "adiabatic_fidelity", ["T_ad", "final_fidelity", "norm_drift"], rows))
    tables.append(_write_table(
        out_dir, "adiabatic_derivatives",
        ["s", "first_measured", "first_bound", "first_margin",
         "second_measured", "second_bound", "second_margin"], drows))


def _clock_pieces(cfg):
    T = cfg.clock_T if cfg.clock_T is not None else 4
    H = build_clock(T)
    return T, H, clock_jump_set(T)


def _run_lowtemp_distance(cfg, out_dir, tables, checks):
    T, H, jumps = _clock_pieces(cfg)
    betas = cfg.grid("beta", default=[5.0, 10.0, 20.0])
    restarts = int(cfg.scalar("restarts", 200, cast=int))
    s = diagonalize(H)
    Linf = zero_temp_generator(s, jumps)
    rows = []
    for beta in betas:
        Lb = assemble_lindbladian(H, jumps, FilterSpec("metropolis", beta))
        lower, method = generator_distance(Linf, Lb, "1→1", restarts=restarts, seed=cfg.seed)
        rhs = perturbation_bound_infinite(beta, len(jumps), 1.0, s.delta_E, s.delta_nu)
        rows.append([beta, lower, rhs, rhs - lower, method])
        checks.append(CheckResult("perturbation-beta-infinity", lower, rhs, lower <= rhs))
    tables.append(_write_table(
        out_dir, "lowtemp_distance",
        ["beta", "measured_1to1_lower", "bound", "margin", "method"], rows))


def _run_laplace(cfg, out_dir, tables, checks):
    T, H, jumps = _clock_pieces(cfg)
    theta = cfg.scalar("theta", 0.1)
    times = cfg.grid("times", default=[0.0, 10.0, 100.0, 1000.0])
    C = min(1.0, 6.0 / (T - 1) ** 2)
    curve = laplace_curve(H, jumps, theta, times, C)
    herbst = herbst_overlap_bound(curve, E1=1.0)
    rows = []
    for i, t in enumerate(times):
        leak = 1.0 - curve.ground_pops[i]
        rows.append([
            t, curve.values[i], curve.bound[i], curve.bound[i] - curve.values[i],
            leak, herbst[i], herbst[i] - leak,
        ])
        checks.append(CheckResult(
            "laplace-herbst-bound", curve.values[i], curve.bound[i],
            curve.values[i] <= curve.bound[i] + LAPLACE_COMPARE_TOL,
            tolerance=LAPLACE_COMPARE_TOL,
        ))
        checks.append(CheckResult(
            "laplace-herbst-bound", leak, herbst[i],
            leak <= herbst[i] + LAPLACE_COMPARE_TOL, tolerance=LAPLACE_COMPARE_TOL,
        ))
    tables.append(_write_table(
        out_dir, "laplace",
        ["t", "laplace", "bound", "margin", "leakage", "herbst_bound", "herbst_margin"],
        rows))


def _run_cheeger(cfg, out_dir, tables, checks):
    T = cfg.clock_T if cfg.clock_T is not None else int(cfg.scalar("T", 8, cast=int))
    move = verify_move_lemma(T) if T % 4 == 0 else None
    rep = cheeger_constant(T)
    rows = []
    for i, cond in enumerate(rep.conductances, start=1):
        rows.append([i, rep.level_dims[i], cond, rep.lower_bound, cond - rep.lower_bound])
    tables.append(_write_table(
        out_dir, "cheeger", ["level", "dim", "conductance", "lower_bound", "margin"], rows))
    checks.append(CheckResult("lemma-cheeger-clock", rep.C, rep.lower_bound, rep.C >= rep.lower_bound))
    if move is not None:
        checks.append(CheckResult(
            "lemma-cheeger-clock", len(move.counterexamples), 0, move.passed))


def _run_overlap(cfg, out_dir, tables, checks):
    if cfg.circuit is None:
        raise ValueError("overlap experiment needs a circuit")
    lam = cfg.scalar("lambda", 1e-3)
    beta = cfg.scalar("beta", 20.0)
    theta = cfg.scalar("theta", 0.1)
    growth = cfg.scalar("growth_factor", 10.0)
    times = cfg.grid("times", default=[0.0, 1.0, 10.0, 100.0, 1000.0, 10000.0])
    curve = ground_overlap_experiment(cfg.circuit, lam, beta, times, theta)
    rows = []
    pops_ok = True
    prev_pop = -np.inf
    for i, t in enumerate(times):
        pops_ok &= curve.ground_pops[i] >= prev_pop - 1e-6
        prev_pop = curve.ground_pops[i]
        rows.append([
            t, curve.overlaps[i], curve.ground_pops[i],
            1.0 - curve.ground_pops[i], curve.herbst[i],
        ])
    tables.append(_write_table(
        out_dir, "overlap",
        ["t", "overlap_eta_prime", "ground_level_population", "leakage", "herbst_bound"],
        rows))
    checks.append(CheckResult(
        "overlap-growth", curve.overlaps[-1], growth * curve.overlaps[0],
        curve.overlaps[-1] >= growth * curve.overlaps[0]))
    checks.append(CheckResult("overlap-growth", float(pops_ok), 1.0, pops_ok, tolerance=1e-6))


_RUNNERS = {
    "gap": _run_gap,
    "mix": _run_mix,
    "telescopic": _run_telescopic,
    "adiabatic": _run_adiabatic,
    "lowtemp-distance": _run_lowtemp_distance,
    "laplace": _run_laplace,
    "cheeger": _run_cheeger,
    "overlap": _run_overlap,
}


def run_experiment(cfg: ExperimentConfig, out_dir: str | None = None) -> RunManifest:
    started = time.strftime("%Y-%m-%dT%H:%M:%S")
    out = Path(out_dir if out_dir is not None else cfg.out_dir)
    tables: list[str] = []
    checks: list[CheckResult] = []
    _RUNNERS[cfg.experiment](cfg, out, tables, checks)
    manifest = RunManifest(
        experiment=cfg.experiment, seed=cfg.seed, version=__version__,
        started=started, finished=time.strftime("%Y-%m-%dT%H:%M:%S"),
        config_echo=cfg.raw_text, tables=tables, checks=checks,
    )
    out.mkdir(parents=True, exist_ok=True)
    (out / "manifest.json").write_text(manifest.to_json())
    return manifest

"""Security experiments: EvPKE, the hybrids Hyb0/Hyb1/Hyb2 and the other-preimage game.

One engine runs every hybrid. It walks the execution tree (prepare the
challenger state, run the adversary, check the certificate, then the
challenger's measurements of C) and emits leaves ``(outcome, weight)``.
Exact mode enumerates every branch over a fixed set of instances drawn from
the seed. Empirical mode follows one sampled branch per trial, each trial on
its own random stream.

Hybrid semantics:

* Hyb0: the real ciphertext state; output the adversary's transcript if the
  certificate verifies, else ⊥.
* Hyb1: the phase is purified into register C; after verification C is
  measured in the computational basis and the run aborts (⊥) if the result
  is 1 - b.
* Hyb2: as Hyb1, but before the computational measurement C is measured in
  the Hadamard basis and the run aborts if the result is 1 - c', where
  y_c' is the image the certificate hit. With ``commute=True`` that
  Hadamard measurement happens before the adversary runs.
"""
from __future__ import annotations

import math
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Iterator, Optional, Union

import numpy as np

from ..primitives import (OwfSpec, OwsgSpec, PkeWrapper, ZeroingWrapper, owf_hash, owf_toy,
                          owsg_toy, pke_group, pke_transparent)
from ..pvd import (DeletionCertificate, compile as pvd_compile, matching_image,
                   owsg_accept_branches, pv_enc, pv_enc_owsg, pv_gen, pv_vrfy, sample_branches)
from ..qstate import COMPUTATIONAL, HADAMARD, BitString, TwoBranchState, lift, purify
from ..qstate.theorems import INEQUALITY_SLACK
from ..randomness import TrialStreams, make_rng, random_below, random_bit
from .adversaries import AdvBranch, ExactBranching, GameView, SampledBranching, Strategy, View
from .distributions import (BOTTOM, EMPIRICAL, EXACT, OutcomeDistribution, Proportion,
                            binomial_ci, exact_proportion, merge_counts, outcome_distance,
                            tv_confidence_radius)

Weight = Union[Fraction, float]

REPORT_SCHEMA = 1
INSTANCE_STREAM = 1
TRIAL_STREAM = 2
EVPKE_STREAM = 3
GAME_STREAM = 4
KEY_STREAM = 5

SCHEMES = ("owf", "owsg")
OWFS = ("toy", "hash")
PKES = ("group", "transparent")
MODES = (EXACT, EMPIRICAL)


@dataclass(frozen=True)
class SchemeConfig:
    """Which primitives to plug in, and their sizes.

    ``m`` defaults to 2n output bits for a one-way function and 4 qubits for
    a state generator.
    """

    scheme: str = "owf"
    n: int = 8
    m: Optional[int] = None
    owf: str = "toy"
    seed: int = 0
    pke: str = "group"
    group: str = "safe256"
    t: int = 1
    layers: int = 3
    zero_z: bool = False

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise ValueError(f"scheme must be one of {SCHEMES}, got {self.scheme!r}")
        if self.owf not in OWFS:
            raise ValueError(f"owf must be one of {OWFS}, got {self.owf!r}")
        if self.pke not in PKES:
            raise ValueError(f"pke must be one of {PKES}, got {self.pke!r}")
        if self.n < 1:
            raise ValueError(f"n must be positive, got {self.n}")
        if self.m is not None and self.m < 1:
            raise ValueError(f"m must be positive, got {self.m}")
        if self.t < 1:
            raise ValueError(f"t must be >= 1, got {self.t}")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")

    @property
    def out_size(self) -> int:
        if self.m is not None:
            return self.m
        return 2 * self.n if self.scheme == "owf" else 4

    def build(self) -> "Scheme":
        return _build(self)

    def to_json(self) -> dict:
        out = asdict(self)
        out["m"] = self.out_size
        return out


@dataclass(frozen=True)
class Scheme:
    config: SchemeConfig
    primitive: Union[OwfSpec, OwsgSpec]
    pke: Any

    @property
    def n(self) -> int:
        return self.primitive.n

    @property
    def owf(self) -> Optional[OwfSpec]:
        return self.primitive if isinstance(self.primitive, OwfSpec) else None


@lru_cache(maxsize=32)
def _build(cfg: SchemeConfig) -> Scheme:
    m = cfg.out_size
    if cfg.scheme == "owsg":
        primitive = owsg_toy(cfg.n, m, cfg.seed, cfg.layers)
    elif cfg.owf == "toy":
        primitive = owf_toy(cfg.n, m, cfg.seed)
    else:
        primitive = owf_hash(cfg.n, m)
    pke = pke_group(cfg.group) if cfg.pke == "group" else pke_transparent()
    return Scheme(cfg, primitive, pke)


@dataclass(frozen=True)
class ExperimentConfig:
    """How to run: exact enumeration or sampling, and over which instances.

    ``instances=K`` fixes K (key, x0, x1) instances drawn from the seed; exact
    mode conditions on them and tags transcripts with the instance index when
    K > 1. ``instances=None`` draws a fresh instance every trial (empirical
    mode only). ``workers`` only changes scheduling, never results.
    """

    scheme: SchemeConfig = field(default_factory=SchemeConfig)
    mode: str = EXACT
    trials: int = 10_000
    instances: Optional[int] = 1
    confidence: float = 0.99
    workers: int = 1

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.trials < 1:
            raise ValueError(f"trials must be positive, got {self.trials}")
        if self.instances is not None and self.instances < 1:
            raise ValueError(f"instances must be positive, got {self.instances}")
        if self.instances is None and self.mode == EXACT:
            raise ValueError("exact mode needs a fixed instance count")
        if not 0 < self.confidence < 1:
            raise ValueError("confidence must lie in (0, 1)")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")

    def to_json(self) -> dict:
        out = {"scheme": self.scheme.to_json(), "mode": self.mode, "instances": self.instances,
               "confidence": self.confidence}
        if self.mode == EMPIRICAL:
            out["trials"] = self.trials
        return out


# -- instances ----------------------------------------------------------------

@dataclass(frozen=True)
class Instance:
    """One challenger sample: (x0, x1) in sampling order, the state and the adversary's view."""

    x0: BitString
    x1: BitString
    state: TwoBranchState
    vk: Any
    view: View


def make_instance(scheme: Scheme, b: int, rng, key_rng=None) -> Instance:
    keys = pv_gen(scheme.pke, rng if key_rng is None else key_rng)
    wrapper = PkeWrapper(scheme.pke, keys.pk)
    if scheme.config.zero_z:
        wrapper = ZeroingWrapper(wrapper)
    vk, out = pvd_compile(wrapper, scheme.primitive, b, rng, t=scheme.config.t, test_mode=True)
    part = out.payload.quantum
    x0, x1 = part.labels()
    view = View(scheme.n, out.payload.payload, out.payload.aux0, out.payload.aux1, keys.pk,
                scheme.owf)
    return Instance(x0, x1, part.take(), vk, view)


@lru_cache(maxsize=64)
def fixed_instances(cfg: SchemeConfig, seed: int, count: int, b: int) -> tuple[Instance, ...]:
    """The K instances of a run; the stream depends on (seed, j) only, never on b.

    Keys come from their own sub-stream, so (x0, x1) do not depend on which
    encryption scheme is plugged in.
    """
    scheme = cfg.build()
    return tuple(make_instance(scheme, b, make_rng(seed, INSTANCE_STREAM, j),
                               make_rng(seed, INSTANCE_STREAM, j, KEY_STREAM))
                 for j in range(count))


# -- the engine -----------------------------------------------------------------

@dataclass(frozen=True)
class Leaf:
    outcome: Any              # BOTTOM or a transcript
    weight: Weight
    hadamard_abort: bool = False
    state: Optional[np.ndarray] = None


def _verify_branches(scheme: Scheme, inst: Instance, cert: BitString, joint):
    if scheme.owf is not None:
        return [(matching_image(inst.vk, cert), joint)]
    return [(i, joint.scaled(p)) for i, p in owsg_accept_branches(inst.vk, cert)]


def _emit(branch: AdvBranch, joint) -> Leaf:
    state = None
    if branch.residual_measured is not None:
        state = joint.residual_density(branch.residual_measured)
    return Leaf(branch.transcript, joint.norm2(), state=state)


def hybrid_leaves(index: int, b: int, scheme: Scheme, inst: Instance, strategy: Strategy,
                  ctx, commute: bool = False) -> Iterator[Leaf]:
    if index not in (0, 1, 2):
        raise ValueError(f"hybrid index must be 0, 1 or 2, got {index!r}")
    if index == 0:
        joint = lift(TwoBranchState(inst.state.x0, inst.state.x1, b))
    else:
        joint = purify(inst.x0, inst.x1)
    if not ctx.exact:
        joint = joint.scaled(1.0)
    early = ctx.split(joint.c_branches(HADAMARD)) if index == 2 and commute else [(None, joint)]
    for h_early, start in early:
        for branch in strategy.run(inst.view, start, ctx):
            for c_prime, jv in ctx.split(_verify_branches(scheme, inst, branch.certificate,
                                                          branch.joint)):
                if c_prime is None:
                    yield Leaf(BOTTOM, jv.norm2())
                    continue
                stage = [jv]
                if index == 2:
                    checked = ctx.split(jv.c_branches(HADAMARD)) if h_early is None \
                        else [(h_early, jv)]
                    stage = []
                    for h, jh in checked:
                        if h == 1 - c_prime:
                            yield Leaf(BOTTOM, jh.norm2(), hadamard_abort=True)
                        else:
                            stage.append(jh)
                for js in stage:
                    if index == 0:
                        yield _emit(branch, js)
                        continue
                    for c, jc in ctx.split(js.c_branches(COMPUTATIONAL)):
                        yield Leaf(BOTTOM, jc.norm2()) if c == 1 - b else _emit(branch, jc)


def _tag(j: int, count: int, outcome):
    if outcome is BOTTOM or count <= 1:
        return outcome
    return f"{j}:{outcome}"


@dataclass(frozen=True)
class HybridRun:
    distribution: OutcomeDistribution
    hadamard_abort: Proportion


def _alphabet(strategy: Strategy, n: int, count: Optional[int]) -> int:
    """Declared outcome count: per-instance transcripts tagged by instance, plus ⊥."""
    return (count or 1) * strategy.alphabet_size(n, fixed_view=count is not None) + 1


def _exact_run(index, b, cfg: ExperimentConfig, strategy, seed, commute) -> HybridRun:
    scheme = cfg.scheme.build()
    instances = fixed_instances(cfg.scheme, seed, cfg.instances, b)
    count = len(instances)
    share = Fraction(1, count)
    weights: dict = {}
    states: dict = {}
    habort: Weight = Fraction(0)
    ctx = ExactBranching()
    for j, inst in enumerate(instances):
        for leaf in hybrid_leaves(index, b, scheme, inst, strategy, ctx, commute):
            key = _tag(j, count, leaf.outcome)
            w = leaf.weight * share
            weights[key] = weights.get(key, Fraction(0)) + w
            if leaf.hadamard_abort:
                habort += w
            if leaf.state is not None:
                states[key] = states.get(key, 0) + leaf.state * float(share)
    dist = OutcomeDistribution(weights, EXACT, alphabet_size=_alphabet(strategy, scheme.n, count),
                               states=states)
    return HybridRun(dist, exact_proportion(habort))


def _trial_leaf(index, b, scheme, fixed, strategy, rng, commute) -> Leaf:
    if fixed is None:
        j, inst = 0, make_instance(scheme, b, rng)
    else:
        j = random_below(rng, len(fixed))
        inst = fixed[j]
    leaves = list(hybrid_leaves(index, b, scheme, inst, strategy, SampledBranching(rng), commute))
    if len(leaves) != 1:
        raise RuntimeError(f"sampled execution produced {len(leaves)} leaves")
    leaf = leaves[0]
    if leaf.state is not None:
        raise ValueError("quantum residual states need exact mode")
    return Leaf(_tag(j, len(fixed) if fixed else 1, leaf.outcome), 1, leaf.hadamard_abort)


def _empirical_chunk(index, b, cfg: ExperimentConfig, strategy, seed, commute, start, stop):
    scheme = cfg.scheme.build()
    fixed = None if cfg.instances is None else fixed_instances(cfg.scheme, seed, cfg.instances, b)
    counts: Counter = Counter()
    habort = 0
    streams = TrialStreams(seed, TRIAL_STREAM, index, b, int(commute))
    for i in range(start, stop):
        rng = streams.stream(i)
        leaf = _trial_leaf(index, b, scheme, fixed, strategy, rng, commute)
        counts[leaf.outcome] += 1
        habort += leaf.hadamard_abort
    return counts, habort


def _chunks(trials: int, workers: int) -> list[tuple[int, int]]:
    size = math.ceil(trials / workers)
    return [(s, min(s + size, trials)) for s in range(0, trials, size)]


def _parallel(fn, args_list, workers: int):
    if workers == 1 or len(args_list) == 1:
        return [fn(*args) for args in args_list]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(fn, *args) for args in args_list]
        return [f.result() for f in futures]


def _empirical_run(index, b, cfg: ExperimentConfig, strategy, seed, commute) -> HybridRun:
    parts = _parallel(_empirical_chunk,
                      [(index, b, cfg, strategy, seed, commute, s, e)
                       for s, e in _chunks(cfg.trials, cfg.workers)], cfg.workers)
    counts = merge_counts(p[0] for p in parts)
    habort = sum(p[1] for p in parts)
    dist = OutcomeDistribution.from_counts(
        counts, alphabet_size=_alphabet(strategy, cfg.scheme.n, cfg.instances))
    return HybridRun(dist, binomial_ci(habort, cfg.trials, cfg.confidence))


def hybrid_run(index: int, b: int, config: ExperimentConfig, adversary: Strategy, seed: int = 0,
               commute: bool = False) -> HybridRun:
    if b not in (0, 1):
        raise ValueError(f"b must be a bit, got {b!r}")
    adversary.check(config.scheme.build())
    runner = _exact_run if config.mode == EXACT else _empirical_run
    return runner(index, b, config, adversary, seed, commute)


def run_hyb(index: int, b: int, config: ExperimentConfig, adversary: Strategy, seed: int = 0,
            commute: bool = False) -> OutcomeDistribution:
    return hybrid_run(index, b, config, adversary, seed, commute).distribution


def abort_probability(config: ExperimentConfig, adversary: Strategy, seed: int = 0) -> Proportion:
    """Probability that the Hadamard measurement of C in Hyb2 returns 1 - c'.

    The event happens before b is used, so both values of b are pooled in
    empirical mode.
    """
    runs = [hybrid_run(2, b, config, adversary, seed) for b in (0, 1)]
    if config.mode == EXACT:
        return runs[0].hadamard_abort
    hits = sum(r.hadamard_abort.successes for r in runs)
    return binomial_ci(hits, 2 * config.trials, config.confidence)


# -- EvPKE through the public API -----------------------------------------------

def _evpke_chunk(b, cfg: ExperimentConfig, strategy, seed, start, stop) -> Counter:
    scheme = cfg.scheme.build()
    counts: Counter = Counter()
    streams = TrialStreams(seed, EVPKE_STREAM, b)
    for i in range(start, stop):
        rng = streams.stream(i)
        if cfg.instances is None:
            j, inst_rng, key_rng = 0, rng, rng
        else:
            j = random_below(rng, cfg.instances)
            inst_rng = make_rng(seed, INSTANCE_STREAM, j)
            key_rng = make_rng(seed, INSTANCE_STREAM, j, KEY_STREAM)
        keys = pv_gen(scheme.pke, key_rng)
        if scheme.owf is not None:
            vk, ct = pv_enc(keys.pk, b, scheme.owf, inst_rng)
            aux = (vk.y0, vk.y1)
        else:
            vk, ct = pv_enc_owsg(keys.pk, b, scheme.primitive, inst_rng, t=cfg.scheme.t)
            aux = (vk.peek(0), vk.peek(1))
        view = View(scheme.n, ct.classical, aux[0], aux[1], keys.pk, scheme.owf)
        joint = lift(ct.quantum.take()).scaled(1.0)
        (branch,) = strategy.run(view, joint, SampledBranching(rng))
        if branch.residual_measured is not None:
            raise ValueError("quantum residual states need exact mode")
        ok = pv_vrfy(vk, DeletionCertificate(branch.certificate), rng)
        counts[_tag(j, cfg.instances or 1, branch.transcript) if ok else BOTTOM] += 1
    return counts


def run_evpke(b: int, config: ExperimentConfig, adversary: Strategy,
              seed: int = 0) -> OutcomeDistribution:
    """EvPKE(b): keys, encryption of b, adversary, public verification, A' or ⊥.

    Empirical mode goes through pv_gen / pv_enc / pv_vrfy trial by trial.
    Exact mode enumerates the same execution (it is Hyb0).
    """
    if b not in (0, 1):
        raise ValueError(f"b must be a bit, got {b!r}")
    if config.mode == EXACT:
        return run_hyb(0, b, config, adversary, seed)
    adversary.check(config.scheme.build())
    parts = _parallel(_evpke_chunk, [(b, config, adversary, seed, s, e)
                                     for s, e in _chunks(config.trials, config.workers)],
                      config.workers)
    return OutcomeDistribution.from_counts(
        merge_counts(parts),
        alphabet_size=_alphabet(adversary, config.scheme.n, config.instances))


# -- other-preimage game --------------------------------------------------------

def _game_view(owf: OwfSpec, x0: BitString, x1: BitString, c: int, zero_z: bool) -> GameView:
    z = BitString.zeros(owf.n) if zero_z else x0 ^ x1
    return GameView(z, owf.eval(x0), owf.eval(x1), (x0, x1)[c], owf)


def _game_won(view: GameView, c: int, answer: BitString) -> bool:
    return answer.n == view.owf.n and view.owf.eval(answer) == (view.y0, view.y1)[1 - c]


def other_preimage_game(owf: OwfSpec, adversary, trials: int, seed: int = 0,
                        zero_z: bool = True, confidence: float = 0.99) -> Proportion:
    """Given y0, y1 and x_c'' for a uniform c'', find x' with F(x') = y_{1-c''}."""
    if trials < 1:
        raise ValueError("trials must be positive")
    wins = 0
    streams = TrialStreams(seed, GAME_STREAM)
    for i in range(trials):
        rng = streams.stream(i)
        x0, x1 = sample_branches(owf.n, rng)
        c = random_bit(rng)
        view = _game_view(owf, x0, x1, c, zero_z)
        wins += _game_won(view, c, adversary.respond(view, rng))
    return binomial_ci(wins, trials, confidence)


def other_preimage_exact(owf: OwfSpec, adversary, zero_z: bool = True) -> Fraction:
    """Exact winning probability of a deterministic adversary, by enumerating (x0, x1, c'')."""
    if not owf.enumerable:
        raise ValueError("exact game evaluation needs an enumerable OWF")
    size = 1 << owf.n
    wins = 0
    for a in range(size):
        for b in range(size):
            if a == b:
                continue
            x0, x1 = BitString(owf.n, a), BitString(owf.n, b)
            for c in (0, 1):
                view = _game_view(owf, x0, x1, c, zero_z)
                wins += _game_won(view, c, adversary.respond(view, None))
    return Fraction(wins, 2 * size * (size - 1))


# -- reports --------------------------------------------------------------------

def _number(x: Weight) -> float:
    return float(x)


def _inequality(name: str, lhs: Weight, rhs: Weight, slack: float = 0.0) -> dict:
    if isinstance(lhs, Fraction) and isinstance(rhs, Fraction) and slack == 0.0:
        ok = lhs <= rhs
    else:
        ok = float(lhs) <= float(rhs) + max(slack, INEQUALITY_SLACK)
    return {"name": name, "lhs": _number(lhs), "rhs": _number(rhs), "slack": slack,
            "satisfied": bool(ok)}


def _sqrt(x: Weight) -> Weight:
    if isinstance(x, Fraction):
        num, den = math.isqrt(x.numerator), math.isqrt(x.denominator)
        if num * num == x.numerator and den * den == x.denominator:
            return Fraction(num, den)
    return math.sqrt(float(x))


def _report(experiment: str, config: ExperimentConfig, adversary, seed: int, started: float,
            **body) -> dict:
    out = {"schema": REPORT_SCHEMA, "experiment": experiment, "config": config.to_json(),
           "adversary": adversary.describe(), "mode": config.mode}
    out.update(body)
    out.update({"seed": seed, "trials": config.trials if config.mode == EMPIRICAL else None,
                "wall_time_ms": round((time.perf_counter() - started) * 1000, 3)})
    return out


def hybrid_chain_report(config: ExperimentConfig, adversary: Strategy, seed: int = 0) -> dict:
    """Advantages of Hyb0..Hyb2, the abort probability and the chain inequalities.

    Checked: Advt(Hyb0) <= 2 Advt(Hyb1); Advt(Hyb2) = 0; for each b
    TD(Hyb1(b), Hyb2(b)) <= 2 sqrt(delta); |Advt(Hyb1) - Advt(Hyb2)| <= 4 sqrt(delta).
    Exact mode compares rationals exactly where it can. Empirical mode
    widens each comparison by the confidence radii of the estimates on its
    left side and uses the upper end of the delta interval.
    """
    started = time.perf_counter()
    runs = {(h, b): hybrid_run(h, b, config, adversary, seed) for h in (0, 1, 2) for b in (0, 1)}
    dists = {k: r.distribution for k, r in runs.items()}
    adv = {h: outcome_distance(dists[h, 0], dists[h, 1]) for h in (0, 1, 2)}
    exact = config.mode == EXACT
    radius = {h: 0.0 if exact else tv_confidence_radius(dists[h, 0], dists[h, 1], config.confidence)
              for h in (0, 1, 2)}
    if exact:
        delta = runs[2, 0].hadamard_abort
        delta_hi: Weight = delta.value
    else:
        hits = runs[2, 0].hadamard_abort.successes + runs[2, 1].hadamard_abort.successes
        delta = binomial_ci(hits, 2 * config.trials, config.confidence)
        delta_hi = delta.high
    gentle = 2 * _sqrt(delta_hi)
    side = {}
    for b in (0, 1):
        td = outcome_distance(dists[1, b], dists[2, b])
        slack = 0.0 if exact else tv_confidence_radius(dists[1, b], dists[2, b], config.confidence)
        side[b] = _inequality(f"td_hyb1_hyb2_b{b} <= 2*sqrt(delta)", td, gentle, slack)
    inequalities = [
        _inequality("advt_hyb0 <= 2*advt_hyb1", adv[0], 2 * adv[1],
                    radius[0] + 2 * radius[1]),
        _inequality("advt_hyb2 == 0", adv[2], Fraction(0), radius[2]),
        side[0],
        side[1],
        _inequality("|advt_hyb1 - advt_hyb2| <= 4*sqrt(delta)", abs(adv[1] - adv[2]),
                    2 * gentle, radius[1] + radius[2]),
    ]
    return _report(
        "hybrid-chain", config, adversary, seed, started,
        advantages={f"hyb{h}": _number(adv[h]) for h in (0, 1, 2)},
        abort_probability=delta.to_json(),
        inequalities=inequalities,
        ci={"confidence": config.confidence,
            "tv_radius": {f"hyb{h}": radius[h] for h in (0, 1, 2)},
            "abort": [delta.low, delta.high]},
        distributions={f"hyb{h}_b{b}": dists[h, b].to_json() for h in (0, 1, 2) for b in (0, 1)},
    )


def hybrid_report(index: int, config: ExperimentConfig, adversary: Strategy, seed: int = 0,
                  commute: bool = False) -> dict:
    """Advantage of a single hybrid; Hyb2 also checks that it is 0."""
    started = time.perf_counter()
    runs = [hybrid_run(index, b, config, adversary, seed, commute) for b in (0, 1)]
    advt = outcome_distance(runs[0].distribution, runs[1].distribution)
    radius = 0.0 if config.mode == EXACT else tv_confidence_radius(
        runs[0].distribution, runs[1].distribution, config.confidence)
    inequalities = []
    if index == 2:
        inequalities.append(_inequality("advt_hyb2 == 0", advt, Fraction(0), radius))
    abort = runs[0].hadamard_abort
    return _report(
        f"hyb{index}", config, adversary, seed, started,
        advantages={f"hyb{index}": _number(advt)},
        abort_probability=abort.to_json() if index == 2 else None,
        inequalities=inequalities,
        ci={"confidence": config.confidence, "tv_radius": {f"hyb{index}": radius}},
        commute=commute,
        distributions={f"hyb{index}_b{b}": runs[b].distribution.to_json() for b in (0, 1)},
    )


def evpke_report(config: ExperimentConfig, adversary: Strategy, seed: int = 0) -> dict:
    started = time.perf_counter()
    dists = [run_evpke(b, config, adversary, seed) for b in (0, 1)]
    advt = outcome_distance(dists[0], dists[1])
    radius = 0.0 if config.mode == EXACT else tv_confidence_radius(dists[0], dists[1],
                                                                   config.confidence)
    return _report(
        "evpke", config, adversary, seed, started,
        advantages={"evpke": _number(advt)},
        abort_probability=None,
        inequalities=[],
        ci={"confidence": config.confidence, "tv_radius": {"evpke": radius}},
        distributions={f"evpke_b{b}": dists[b].to_json() for b in (0, 1)},
    )


def game_report(owf: OwfSpec, adversary, trials: int, seed: int = 0, zero_z: bool = True,
                confidence: float = 0.99, config: Optional[dict] = None) -> dict:
    started = time.perf_counter()
    result = other_preimage_game(owf, adversary, trials, seed, zero_z, confidence)
    return {"schema": REPORT_SCHEMA, "experiment": "other-preimage",
            "config": dict(config or {}, n=owf.n, m=owf.m, owf=owf.name, zero_z=zero_z,
                           confidence=confidence),
            "adversary": {"name": adversary.name}, "mode": EMPIRICAL,
            "advantages": {}, "success": result.to_json(), "abort_probability": None,
            "inequalities": [], "ci": {"confidence": confidence,
                                       "success": [result.low, result.high]},
            "seed": seed, "trials": trials,
            "wall_time_ms": round((time.perf_counter() - started) * 1000, 3)}


__all__ = [
    "ExperimentConfig", "HybridRun", "Instance", "Leaf", "Scheme", "SchemeConfig",
    "abort_probability", "evpke_report", "fixed_instances", "game_report", "hybrid_chain_report",
    "hybrid_leaves", "hybrid_report", "hybrid_run", "make_instance", "other_preimage_exact",
    "other_preimage_game", "run_evpke", "run_hyb",
]

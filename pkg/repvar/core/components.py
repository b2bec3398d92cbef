#!/usr/bin/env python3
"""
Components module for repvar.

Detects the irreducible components of Rep_d of a truncated path algebra
and assembles one report per component. Four routes exist:

- local algebras (one vertex, r loops): closed-form layering list
- acyclic quivers: minimal (radical, generic socle) layering pairs
- radical square zero (L = 1): minimal (top, socle) pairs, enriched with
  Kac summands through the separated quiver
- everything else: minimal pairs first, then later candidates are tested
  for containment in already accepted closures with a filtration search
  on finite-field specializations of their generic modules
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from ..utils.config import (
    CandidateStatus, Certification, Config, DetectionRoute, Indecomposability, PipelineMode,
)
from ..utils.seeding import stable_hash
from ..utils.settings import OracleSettings
from ..utils.worker_pool import WorkerPool
from .filtrations import FiltrationSearch, FiltrationSearchCapError
from .hereditary import canonical_decomposition, mu_from_decomposition
from .layers import (
    LayeringPair, SemisimpleSequence, enumerate_realizable, generic_socle_layering,
    minimal_pairs, pair_leq,
)
from .quiver import DimVector, Path, TruncatedAlgebra, hat_dim, separated_quiver, unhat_dim
from .repfield import (
    Representation, RepresentationError, end_dim, extend_scalars, fitting_decompose,
    path_nullity_profile, radical_layering, socle_layering,
)
from .skeleta import (
    GenericPresentation, Skeleton, SpecializationError, generic_presentation, iter_skeleta,
    specialize,
)


logger = logging.getLogger(__name__)

SettingsLike = Union[OracleSettings, Mapping, None]


class ComponentsError(Exception):
    """Exception raised when a pipeline is applied to an algebra it does not handle."""
    pass


@dataclass
class ComponentReport:
    """Everything known about one irreducible component."""
    radical_layering: SemisimpleSequence
    socle_layering: SemisimpleSequence
    route: DetectionRoute
    certification: Certification
    skeleton: Optional[Skeleton] = None
    presentation: Optional[GenericPresentation] = None
    sampled_end_dim: Optional[int] = None
    indecomposability: Indecomposability = Indecomposability.UNKNOWN
    kac_summands: Optional[List[DimVector]] = None
    kac_verified: Optional[bool] = None
    mu: Optional[int] = None
    arrow_nullities: Optional[Dict[str, int]] = None

    @property
    def pair(self) -> LayeringPair:
        return LayeringPair(self.radical_layering, self.socle_layering)

    @property
    def dense_orbit(self) -> Optional[bool]:
        return None if self.mu is None else self.mu == 0

    def to_dict(self) -> dict:
        return {
            "radical_layering": str(self.radical_layering),
            "socle_layering": str(self.socle_layering),
            "detection_route": self.route.value,
            "certification": self.certification.value,
            "skeleton": self.skeleton.to_dict() if self.skeleton else None,
            "presentation": self.presentation.to_dict() if self.presentation else None,
            "sampled_end_dim": self.sampled_end_dim,
            "indecomposability": self.indecomposability.value,
            "kac_summands": [list(v) for v in self.kac_summands] if self.kac_summands is not None else None,
            "kac_verified": self.kac_verified,
            "mu": self.mu,
            "dense_orbit": self.dense_orbit,
            "arrow_nullities": self.arrow_nullities,
        }


@dataclass
class UndecidedCandidate:
    """A candidate whose containment test hit a cap or got disagreeing answers."""
    pair: LayeringPair
    reason: str

    def to_dict(self) -> dict:
        return {
            "radical_layering": str(self.pair.radical),
            "socle_layering": str(self.pair.socle),
            "reason": self.reason,
        }


@dataclass
class ComponentsResult:
    """Components found for one (algebra, dimension vector) plus open candidates."""
    components: List[ComponentReport]
    mode: PipelineMode
    undecided: List[UndecidedCandidate] = field(default_factory=list)
    rejected: List[LayeringPair] = field(default_factory=list)

    @property
    def count(self) -> int:
        return len(self.components)

    def layerings(self) -> List[SemisimpleSequence]:
        return [c.radical_layering for c in self.components]

    def to_dict(self) -> dict:
        return {
            "mode": self.mode.value,
            "component_count": self.count,
            "components": [c.to_dict() for c in self.components],
            "undecided": [u.to_dict() for u in self.undecided],
            "rejected_count": len(self.rejected),
        }


def oracle_values(settings: SettingsLike = None) -> Dict:
    """Settings as a plain dictionary, defaults filled in."""
    values = Config.get_oracle_defaults()
    if isinstance(settings, OracleSettings):
        values.update(settings.get_all())
    elif settings:
        values.update(settings)
    return values


# Local algebras

def _uniserial(d: int, loewy_bound: int) -> SemisimpleSequence:
    return SemisimpleSequence(tuple((1 if l < d else 0,) for l in range(loewy_bound + 1)))


def components_local(r: int, loewy_bound: int, d: int) -> List[SemisimpleSequence]:
    """
    Generic radical layerings of the components of Rep_d over K<x_1..x_r>/J^{L+1}.

    For d <= L+1 the single component is uniserial. For r = 1 the generic
    module is a sum of Jordan blocks of maximal size. Otherwise the
    components are the positive compositions (a_0, ..., a_L) of d with
    a_l <= r*a_{l-1} and a_{l-1} <= r*a_l.
    """
    if r < 1:
        raise ComponentsError(f"A local algebra needs at least one loop, got {r}")
    if d < 0 or loewy_bound < 0:
        raise ComponentsError(f"Invalid local instance d={d}, L={loewy_bound}")
    if d <= loewy_bound + 1:
        return [_uniserial(d, loewy_bound)]
    if r == 1:
        blocks, rest = divmod(d, loewy_bound + 1)
        return [SemisimpleSequence(tuple(
            (blocks + (1 if l < rest else 0),) for l in range(loewy_bound + 1)
        ))]

    out = []

    def walk(prefix: List[int], remaining: int):
        if len(prefix) == loewy_bound + 1:
            if remaining == 0:
                out.append(SemisimpleSequence(tuple((x,) for x in prefix)))
            return
        slots = loewy_bound + 1 - len(prefix)
        low = 1
        high = remaining - (slots - 1)
        if prefix:
            prev = prefix[-1]
            low = max(low, -(-prev // r))
            high = min(high, r * prev)
        for a in range(low, high + 1):
            walk(prefix + [a], remaining - a)

    walk([], d)
    return out


def local_rad_square_zero_count(r: int, d: int) -> int:
    """Number of splittings d = u + v with u <= r*v and v <= r*u (1 for d <= 2)."""
    if d <= 2:
        return 1
    return sum(1 for u in range(d + 1) if u <= r * (d - u) and d - u <= r * u)


# Reports

def _skeleton_and_presentation(s: SemisimpleSequence, a: TruncatedAlgebra):
    sk = next(iter_skeleta(s, a), None)
    if sk is None:
        return None, None
    return sk, generic_presentation(s, a, sk)


def build_report(a: TruncatedAlgebra, pair: LayeringPair, route: DetectionRoute,
                 certification: Certification, settings: SettingsLike = None,
                 enrich: bool = True) -> ComponentReport:
    """
    Report for one component; with ``enrich`` the generic module is
    specialized at the large prime and its endomorphisms sampled.
    """
    report = ComponentReport(pair.radical, pair.socle, route, certification)
    if not enrich:
        return report
    values = oracle_values(settings)
    report.skeleton, report.presentation = _skeleton_and_presentation(pair.radical, a)
    if report.presentation is None:
        return report
    key = stable_hash([x for layer in pair.radical.layers for x in layer])
    try:
        rep = specialize(report.presentation, a, p=values["prime"],
                         seed=stable_hash((values["seed"], key)),
                         retries=values["specialization_retries"])
    except SpecializationError as e:
        logger.warning(f"No generic module sample for {pair.radical}: {e}")
        return report
    report.sampled_end_dim = end_dim(rep)
    if a.loewy_bound >= 1 and a.quiver.arrows:
        arrows = a.quiver.arrows
        profile = path_nullity_profile(rep, [Path(x.source).extend(x) for x in arrows])
        report.arrow_nullities = {x.name: k for x, k in zip(arrows, profile)}
    if report.sampled_end_dim == 1:
        report.indecomposability = Indecomposability.GENERIC_INDECOMPOSABLE
    elif len(fitting_decompose(rep, values["seed"], values["fitting_attempts"])) > 1:
        report.indecomposability = Indecomposability.DECOMPOSES
    return report


def _add_kac_summands(report: ComponentReport, a: TruncatedAlgebra, d: DimVector,
                      values: Mapping) -> None:
    """Kac summands of (top, d - top) on the separated quiver, mapped back."""
    q_hat = separated_quiver(a.quiver)
    d_hat = hat_dim(report.radical_layering[0], d)
    decomposition = canonical_decomposition(
        q_hat, d_hat, values["samples"], values["hereditary_prime"], values["seed"],
        values["decomposition_rounds"],
    )
    report.kac_summands = [unhat_dim(v) for v in decomposition.vectors()]
    report.kac_verified = decomposition.verified
    report.mu = mu_from_decomposition(q_hat, decomposition)


def _theta_pairs(a: TruncatedAlgebra, d: DimVector, cap: Optional[int]) -> List[LayeringPair]:
    return [LayeringPair(s, generic_socle_layering(s, a)) for s in enumerate_realizable(d, a, cap)]


# Pipelines

def components_acyclic(a: TruncatedAlgebra, d: Sequence[int], settings: SettingsLike = None,
                       enrich: bool = True) -> List[ComponentReport]:
    """Components of an acyclic truncated algebra: the minimal layering pairs."""
    if not a.quiver.is_acyclic():
        raise ComponentsError("components_acyclic needs an acyclic quiver")
    values = oracle_values(settings)
    d = a.quiver.check_dim(d)
    minimal = minimal_pairs(_theta_pairs(a, d, values["sequence_cap"]))
    logger.info(f"Acyclic pipeline: {len(minimal)} minimal pairs for d={d}")
    reports = [build_report(a, p, DetectionRoute.ACYCLIC_THETA, Certification.EXACT, values, enrich)
               for p in minimal]
    if enrich and a.is_hereditary() and len(reports) == 1:
        decomposition = canonical_decomposition(
            a.quiver, d, values["samples"], values["hereditary_prime"], values["seed"],
            values["decomposition_rounds"],
        )
        reports[0].kac_summands = decomposition.vectors()
        reports[0].kac_verified = decomposition.verified
        reports[0].mu = mu_from_decomposition(a.quiver, decomposition)
    return reports


def components_rad_square_zero(a: TruncatedAlgebra, d: Sequence[int],
                               settings: SettingsLike = None,
                               enrich: bool = True) -> List[ComponentReport]:
    """Components for L = 1: minimal (top, socle) pairs."""
    if a.loewy_bound != 1:
        raise ComponentsError(f"Radical-square-zero pipeline needs L = 1, got {a.loewy_bound}")
    values = oracle_values(settings)
    d = a.quiver.check_dim(d)
    minimal = minimal_pairs(_theta_pairs(a, d, values["sequence_cap"]))
    logger.info(f"Radical-square-zero pipeline: {len(minimal)} components for d={d}")
    reports = []
    for pair in minimal:
        report = build_report(a, pair, DetectionRoute.RAD_SQUARE_ZERO, Certification.EXACT,
                              values, enrich)
        if enrich:
            _add_kac_summands(report, a, d, values)
        reports.append(report)
    return reports


def membership_rad_square_zero(m: Representation, s: SemisimpleSequence) -> bool:
    """True iff ``m`` lies in the closure of Rep S for L = 1."""
    a = m.algebra
    if a.loewy_bound != 1:
        raise ComponentsError("Closure membership by top and socle needs L = 1")
    if s.total() != m.dims:
        raise ComponentsError(f"Sequence total {s.total()} differs from {m.dims}")
    top = radical_layering(m)[0]
    socle = socle_layering(m)[0]
    generic_socle = generic_socle_layering(s, a)[0]
    return (all(x >= y for x, y in zip(top, s[0]))
            and all(x >= y for x, y in zip(socle, generic_socle)))


class ContainmentTest:
    """
    Decides whether the generic module of a candidate layering lies in the
    closure of some accepted component.

    For each small prime, ``gamma_trials`` specializations are searched for
    filtrations governed by the eligible accepted sequences, over F_p first
    and over the degree-k extension only when no F_p search succeeds. A
    prime answers "contained" when a majority of its trials does; the
    primes must agree.
    """

    def __init__(self, a: TruncatedAlgebra, accepted: Sequence[LayeringPair], values: Mapping):
        self.a = a
        self.accepted = list(accepted)
        self.values = values

    def eligible(self, candidate: LayeringPair) -> List[SemisimpleSequence]:
        """Accepted sequences strictly below ``candidate``, closest first."""
        below = [p for p in self.accepted if p != candidate and pair_leq(p, candidate)]
        below.sort(key=lambda p: -p.rank_key())
        return [p.radical for p in below]

    def _trial_contained(self, gp: GenericPresentation, targets: List[SemisimpleSequence],
                         prime: int, trial: int, key: int) -> bool:
        m = specialize(gp, self.a, p=prime,
                       seed=stable_hash((self.values["seed"], key, prime, trial)),
                       retries=self.values["specialization_retries"])
        cap = self.values["filtration_cap"]
        if FiltrationSearch(m, cap).exists_any(targets):
            return True
        degree = self.values["extension_degree"]
        if degree > 1:
            return FiltrationSearch(extend_scalars(m, degree), cap).exists_any(targets)
        return False

    def __call__(self, candidate: LayeringPair) -> Tuple[CandidateStatus, str]:
        targets = self.eligible(candidate)
        if not targets:
            return CandidateStatus.ACCEPTED, "no accepted component below"
        s = candidate.radical
        _, gp = _skeleton_and_presentation(s, self.a)
        key = stable_hash([x for layer in s.layers for x in layer])
        trials = self.values["gamma_trials"]
        verdicts = []
        try:
            for prime in self.values["small_primes"]:
                hits = misses = 0
                # stop as soon as the majority is settled
                for t in range(trials):
                    if self._trial_contained(gp, targets, prime, t, key):
                        hits += 1
                    else:
                        misses += 1
                    if 2 * hits > trials or 2 * misses >= trials:
                        break
                verdicts.append(2 * hits > trials)
                logger.debug(f"{s} over GF({prime}): {hits} contained, {misses} not")
        except (FiltrationSearchCapError, SpecializationError) as e:
            return CandidateStatus.UNDECIDED, str(e)
        if all(verdicts):
            return CandidateStatus.REJECTED, "generic module governed by an accepted sequence"
        if not any(verdicts):
            return CandidateStatus.ACCEPTED, "generic module governed by its own sequence only"
        return CandidateStatus.UNDECIDED, f"primes {self.values['small_primes']} disagree"


def components_general_truncated(a: TruncatedAlgebra, d: Sequence[int],
                                 settings: SettingsLike = None,
                                 enrich: bool = True) -> ComponentsResult:
    """
    Components of an arbitrary truncated algebra.

    Pairs are peeled off in layers of minimal elements. The first layer is
    accepted outright; each later candidate is accepted iff its generic
    module is not contained in the closure of an accepted component.
    Candidates in one layer are incomparable and tested independently.
    """
    values = oracle_values(settings)
    d = a.quiver.check_dim(d)
    remaining = _theta_pairs(a, d, values["sequence_cap"])
    pool = WorkerPool(values["workers"])
    accepted: List[Tuple[LayeringPair, DetectionRoute, Certification]] = []
    undecided: List[UndecidedCandidate] = []
    rejected: List[LayeringPair] = []
    depth = 0
    while remaining:
        layer = minimal_pairs(remaining)
        chosen = set(layer)
        remaining = [p for p in remaining if p not in chosen]
        if depth == 0:
            accepted.extend((p, DetectionRoute.THETA_MINIMAL, Certification.EXACT) for p in layer)
            logger.info(f"Layer 0: {len(layer)} minimal pairs accepted")
        else:
            test = ContainmentTest(a, [p for p, _, _ in accepted], values)
            tasks = pool.map(test, layer, names=[str(p.radical) for p in layer])
            for pair, task in zip(layer, tasks):
                if isinstance(task.error, (FiltrationSearchCapError, RepresentationError)):
                    status, reason = CandidateStatus.UNDECIDED, str(task.error)
                elif task.error is not None:
                    raise task.error
                else:
                    status, reason = task.result
                if status == CandidateStatus.ACCEPTED:
                    accepted.append((pair, DetectionRoute.GAMMA_CERTIFIED,
                                     Certification.FP_SPECIALIZATION))
                elif status == CandidateStatus.REJECTED:
                    rejected.append(pair)
                else:
                    logger.warning(f"Candidate {pair.radical} undecided: {reason}")
                    undecided.append(UndecidedCandidate(pair, reason))
            logger.info(
                f"Layer {depth}: {len(layer)} candidates, "
                f"{sum(1 for p in layer if p in {q for q, _, _ in accepted})} accepted"
            )
        depth += 1

    reports = [build_report(a, p, route, cert, values, enrich) for p, route, cert in accepted]
    return ComponentsResult(reports, PipelineMode.GENERAL, undecided, rejected)


def select_mode(a: TruncatedAlgebra) -> PipelineMode:
    """Fast path for the algebra: local, acyclic, radical square zero or general."""
    if a.quiver.is_local() and a.quiver.arrows:
        return PipelineMode.LOCAL
    if a.quiver.is_acyclic():
        return PipelineMode.ACYCLIC
    if a.loewy_bound == 1:
        return PipelineMode.RAD_SQUARE_ZERO
    return PipelineMode.GENERAL


def components(a: TruncatedAlgebra, d: Sequence[int], settings: SettingsLike = None,
               mode: PipelineMode = PipelineMode.AUTO, enrich: bool = True) -> ComponentsResult:
    """
    Irreducible components of Rep_d(a) through the selected pipeline.

    Raises:
        ComponentsError: If a forced mode does not apply to the algebra
    """
    d = a.quiver.check_dim(d)
    if mode == PipelineMode.AUTO:
        mode = select_mode(a)
    logger.info(f"Components of d={d} at L={a.loewy_bound} via the {mode.value} pipeline")

    if mode == PipelineMode.LOCAL:
        if not a.quiver.is_local():
            raise ComponentsError("Local pipeline needs a one-vertex quiver")
        values = oracle_values(settings)
        sequences = components_local(len(a.quiver.arrows), a.loewy_bound, d[0])
        reports = []
        for s in sequences:
            pair = LayeringPair(s, generic_socle_layering(s, a))
            report = build_report(a, pair, DetectionRoute.LOCAL, Certification.EXACT, values, enrich)
            if enrich and a.loewy_bound == 1:
                _add_kac_summands(report, a, d, values)
            reports.append(report)
        return ComponentsResult(reports, mode)
    if mode == PipelineMode.ACYCLIC:
        return ComponentsResult(components_acyclic(a, d, settings, enrich), mode)
    if mode == PipelineMode.RAD_SQUARE_ZERO:
        return ComponentsResult(components_rad_square_zero(a, d, settings, enrich), mode)
    return components_general_truncated(a, d, settings, enrich)

"""Finite component models for trace-agreement densities.

A :class:`ComponentModel` collapses an algebraic envelope to a finite group
``G`` with a normal subgroup ``G0`` playing the identity component.  Cosets of
``G0`` are the components; two class functions play the traces of the two
projections.  Everything except :func:`sample_density` is exact.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

import numpy as np

from .errors import DimMismatch, GroupMismatch, NonRationalResult
from .finchar.characters import ClassFunction, inner_product, irreducible_characters
from .finchar.groups import FiniteGroup

# samples are drawn in fixed blocks, each with its own derived seed, so the
# merged count does not depend on how many workers share the blocks
BLOCK = 1 << 16
Z95 = 1.959963984540054


@dataclass(frozen=True)
class ComponentModel:
    group: FiniteGroup
    g0: frozenset
    chi1: ClassFunction
    chi2: ClassFunction
    m: int

    def __post_init__(self):
        g = self.group
        if self.chi1.group is not g or self.chi2.group is not g:
            raise GroupMismatch("both characters must live on the model group")
        g0 = frozenset(self.g0)
        object.__setattr__(self, "g0", g0)
        g.require_normal(g0)
        if self.chi1.degree != self.m or self.chi2.degree != self.m:
            raise DimMismatch(f"characters have degrees {self.chi1.degree}, {self.chi2.degree}; expected {self.m}")

    @classmethod
    def build(cls, group: FiniteGroup, g0: Iterable[int], chi1: ClassFunction, chi2: ClassFunction) -> "ComponentModel":
        """Take ``m`` from the first character's degree."""
        deg = chi1.degree
        if not (isinstance(deg, int) or (isinstance(deg, Fraction) and deg.denominator == 1)):
            raise DimMismatch(f"degree {deg} is not an integer")
        return cls(group, frozenset(g0), chi1, chi2, int(deg))

    def agreement_classes(self) -> list[bool]:
        return [a == b for a, b in zip(self.chi1.values, self.chi2.values)]

    def agreement_mask(self) -> np.ndarray:
        per_class = self.agreement_classes()
        return np.array([per_class[self.group.class_of[x]] for x in range(self.group.order)], dtype=bool)

    def cosets(self) -> list[list[int]]:
        reps, index = self.group.left_cosets(self.g0)
        out: list[list[int]] = [[] for _ in reps]
        for x in range(self.group.order):
            out[index[x]].append(x)
        return out

    def components(self, chi: ClassFunction) -> int:
        """Component count of the image of ``chi``: the index of ``G0 * ker chi``."""
        g = self.group
        kernel = [x for x in range(g.order) if chi(x) == chi.degree]
        return g.order // len(g.generate(set(self.g0) | set(kernel)))


@dataclass
class DensityReport:
    lam: Fraction
    agreement: Fraction
    empirical_density: Fraction | None
    sample_size: int
    interval: tuple[float, float] | None
    dh1: Fraction
    dh2: Fraction
    components: tuple[int, int]
    mean_sq_char_diff: Fraction
    upper_bound: Fraction
    lower_bound_applies: bool
    lower_ok: bool | None
    upper_ok: bool
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.upper_ok and self.lower_ok is not False

    def to_json(self) -> dict:
        return {
            "lambda": str(self.lam),
            "agreement_density": str(self.agreement),
            "empirical_density": None if self.empirical_density is None else str(self.empirical_density),
            "sample_size": self.sample_size,
            "interval95": None if self.interval is None else [round(self.interval[0], 12), round(self.interval[1], 12)],
            "dh1": str(self.dh1),
            "dh2": str(self.dh2),
            "components": list(self.components),
            "mean_sq_char_diff": str(self.mean_sq_char_diff),
            "upper_bound": str(self.upper_bound),
            "lower_bound_applies": self.lower_bound_applies,
            "lower_ok": self.lower_ok,
            "upper_ok": self.upper_ok,
            "notes": list(self.notes),
        }


def component_lambda(model: ComponentModel) -> Fraction:
    """Fraction of cosets of ``G0`` on which the two characters agree identically."""
    per_class = model.agreement_classes()
    cosets = model.cosets()
    inside = sum(all(per_class[model.group.class_of[x]] for x in c) for c in cosets)
    return Fraction(inside, len(cosets))


def exact_agreement_density(model: ComponentModel) -> Fraction:
    g = model.group
    per_class = model.agreement_classes()
    return Fraction(sum(s for s, ok in zip(g.class_sizes, per_class) if ok), g.order)


def wilson_interval(hits: int, n: int, z: float = Z95) -> tuple[float, float]:
    p = hits / n
    denom = 1 + z * z / n
    centre = (p + z * z / (2 * n)) / denom
    half = z * math.sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / denom
    # snap the degenerate ends so that all-hit or no-hit runs contain 1 or 0
    lo = 0.0 if hits == 0 else max(0.0, centre - half)
    hi = 1.0 if hits == n else min(1.0, centre + half)
    return lo, hi


def _count_block(mask: np.ndarray, seed: int, block: int, size: int) -> int:
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(block,))))
    draws = rng.integers(0, mask.size, size=size)
    return int(mask[draws].sum())


def sample_density(model: ComponentModel, samples: int, seed: int = 0, workers: int = 1):
    """Uniform draws from ``G``; returns ``(estimate, (lo, hi))`` with a Wilson 95% interval.

    Deterministic in ``seed`` and independent of ``workers``.
    """
    if samples < 1:
        raise ValueError("samples must be positive")
    mask = model.agreement_mask()
    blocks = [(b, min(BLOCK, samples - b * BLOCK)) for b in range(-(-samples // BLOCK))]
    if workers > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            counts = list(pool.map(lambda bs: _count_block(mask, seed, *bs), blocks))
    else:
        counts = [_count_block(mask, seed, b, s) for b, s in blocks]
    hits = sum(counts)
    return Fraction(hits, samples), wilson_interval(hits, samples)


def dh_thresholds(m: int, c1: int, c2: int) -> tuple[Fraction, Fraction]:
    if min(m, c1, c2) < 1:
        raise ValueError("m, c1 and c2 must be positive")
    dh1 = 1 - Fraction(1, 2 * m * m)
    dh2 = min(1 - Fraction(1, c1), 1 - Fraction(1, c2))
    return dh1, dh2


def is_genuine_character(chi: ClassFunction) -> bool:
    """Nonnegative integer multiplicities against the irreducible characters."""
    try:
        mults = [inner_product(chi, irr) for irr in irreducible_characters(chi.group)]
    except NonRationalResult:
        return False
    return all(c.denominator == 1 and c >= 0 for c in mults)


def orthogonality_audit(model: ComponentModel, samples: int = 0, seed: int = 0, workers: int = 1) -> DensityReport:
    """Exact mean of ``|chi1 - chi2|^2`` against the bounds ``2`` and ``(1 - lambda) * 4m^2``.

    The lower bound only applies when both characters are irreducible and
    distinct; otherwise it is reported as not applicable.
    """
    lam = component_lambda(model)
    agree = exact_agreement_density(model)
    diff = model.chi1 - model.chi2
    mean = inner_product(diff, diff)
    upper = (1 - lam) * 4 * model.m * model.m
    notes = []
    genuine = is_genuine_character(model.chi1) and is_genuine_character(model.chi2)
    if not genuine:
        notes.append("inputs are not both genuine characters; the upper bound is not guaranteed")
    applies = (
        genuine
        and model.chi1.norm() == 1
        and model.chi2.norm() == 1
        and not diff.is_zero()
    )
    if not applies:
        notes.append("lower bound skipped: characters are not two distinct irreducibles")
    c1, c2 = model.components(model.chi1), model.components(model.chi2)
    dh1, dh2 = dh_thresholds(model.m, c1, c2)
    est = interval = None
    if samples:
        est, interval = sample_density(model, samples, seed, workers)
    return DensityReport(
        lam=lam,
        agreement=agree,
        empirical_density=est,
        sample_size=samples,
        interval=interval,
        dh1=dh1,
        dh2=dh2,
        components=(c1, c2),
        mean_sq_char_diff=mean,
        upper_bound=upper,
        lower_bound_applies=applies,
        lower_ok=(mean >= 2) if applies else None,
        upper_ok=mean <= upper,
        notes=notes,
    )


def normal_subgroups(group: FiniteGroup) -> list[frozenset]:
    """Every normal subgroup, found as normal closures of unions of classes."""
    found = {frozenset([group.identity])}
    frontier = list(found)
    while frontier:
        nxt = []
        for n in frontier:
            for cls in group.classes:
                if cls[0] in n:
                    continue
                bigger = frozenset(group.normal_closure(set(n) | set(cls)))
                if bigger not in found:
                    found.add(bigger)
                    nxt.append(bigger)
        frontier = nxt
    return sorted(found, key=lambda s: (len(s), sorted(s)))

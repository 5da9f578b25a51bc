"""Command-line front end.

Every subcommand prints one JSON report (sorted keys) holding the resolved
config, a command-specific ``result`` and a nonempty list of ``checks``.

Exit codes: 0 all checks pass, 1 a check failed, 2 domain error (the error
class name is in the report), 3 malformed input (one line on stderr).
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from fractions import Fraction
from math import comb, prod
from typing import Any, Callable

from . import lattice as lt
from .acceptance import run_acceptance
from .density import ComponentModel, orthogonality_audit
from .errors import RecoverRepError
from .finchar import matrices as mx
from .finchar.characters import ClassFunction, irreducible_characters, linear_characters
from .finchar.groups import FiniteGroup, group_from_name, heisenberg_group
from .finchar.reps import (
    MatrixRep,
    clifford_decompose,
    commutant_dimension,
    compare_fixed_sets,
    conjugation_automorphisms,
    heisenberg_rep,
    kth_power_equal,
    linear_rep,
    permutation_rep,
    pre_asai,
    regular_rep,
    sign_rep,
    standard_rep,
    subgroup_of,
    trivial_rep,
    twist_cocycle,
    twist_search,
    verify_heisenberg_relations,
)
from .liealg import (
    adjoint_fibre,
    check_unique_factorization,
    dominant_weights,
    dual_highest_weight,
    get_algebra,
    irr_weights,
    product_group_adjoint_counterexample,
    weyl_dim,
)
from .weights import (
    WeightMultiset,
    dual,
    ext_power,
    recover_from_sym,
    recover_from_tensor,
    sym_power,
    tensor_power,
)

SEED_ENV = "RECOVERREP_SEED"


class BadInput(Exception):
    """Malformed command-line or file input (exit code 3)."""


def check(name: str, passed: bool, details: Any = None) -> dict:
    return {"name": name, "passed": bool(passed), "details": details}


# ---------------------------------------------------------------------------
# input parsing


def _read_arg(text: str) -> str:
    """``@path`` reads a file, ``-`` reads standard input, anything else is literal."""
    if text == "-":
        return sys.stdin.read()
    if text.startswith("@"):
        try:
            with open(text[1:], encoding="utf-8") as fh:
                return fh.read()
        except OSError as exc:
            raise BadInput(f"cannot read {text[1:]}: {exc.strerror}") from None
    return text


def parse_json(text: str, what: str):
    try:
        return json.loads(_read_arg(text))
    except json.JSONDecodeError as exc:
        raise BadInput(f"{what}: invalid JSON ({exc.msg} at position {exc.pos})") from None


def parse_ints(text: str, what: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise BadInput(f"{what}: expected integers, got {text!r}") from None


def parse_weights(text: str) -> WeightMultiset:
    raw = _read_arg(text).strip()
    if raw.startswith("{"):
        return WeightMultiset.from_json(raw)
    return WeightMultiset.from_text(raw)


def parse_group(spec: str) -> FiniteGroup:
    if spec.startswith("@") or spec.lstrip().startswith("{"):
        return FiniteGroup.from_json(parse_json(spec, "group"))
    return group_from_name(spec)


def parse_subgroup(group: FiniteGroup, spec: str) -> frozenset[int]:
    """Subgroup selectors: trivial, all, center, derived, alt, gen:W1,W2 or element indices."""
    key = spec.strip().lower()
    if key in ("trivial", "1", "e"):
        return frozenset([group.identity])
    if key in ("all", "whole", "g"):
        return frozenset(range(group.order))
    if key in ("center", "centre", "z"):
        return frozenset(group.center)
    if key in ("derived", "commutator"):
        return frozenset(group.derived)
    if key == "alt":
        if group.permutations is None:
            return frozenset(group.derived)
        return frozenset(x for x, p in enumerate(group.permutations) if _is_even(p))
    if key.startswith("gen:"):
        words = [w for w in spec.split(":", 1)[1].split(",") if w.strip()]
        return group.generate([_element(group, w.strip()) for w in words])
    elems = frozenset(parse_ints(spec, "subgroup"))
    if any(not 0 <= x < group.order for x in elems) or not group.is_subgroup(elems):
        raise BadInput(f"{spec!r} does not list the elements of a subgroup")
    return elems


def _element(group: FiniteGroup, key: str) -> int:
    if key.isdigit():
        if int(key) >= group.order:
            raise BadInput(f"element index {key} out of range for {group.name}")
        return int(key)
    try:
        return group.element(key)
    except (KeyError, ValueError, IndexError):
        try:
            return group.word(key)
        except (KeyError, ValueError, IndexError):
            raise BadInput(f"unknown element {key!r} of {group.name}") from None


def _is_even(perm) -> bool:
    seen, parity = set(), 0
    for i in range(len(perm)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = perm[j]
            length += 1
        parity += length - 1
    return parity % 2 == 0


def _index(spec: str, items: list, what: str):
    try:
        i = int(spec)
    except ValueError:
        raise BadInput(f"{what} index must be an integer, got {spec!r}") from None
    if not 0 <= i < len(items):
        raise BadInput(f"{what} index {i} out of range 0..{len(items) - 1}")
    return items[i]


def parse_rep(group: FiniteGroup, spec: str) -> MatrixRep:
    """Rep names: triv, sign, std, perm, reg, lin:i, heis:a, res:<rep of parent>, @file.json, and '+' sums."""
    parts = [p.strip() for p in spec.split("+")] if not spec.startswith("@") else [spec]
    reps = [_parse_one_rep(group, p) for p in parts]
    out = reps[0]
    for r in reps[1:]:
        out = out.direct_sum(r)
    return out


def _parse_one_rep(group: FiniteGroup, spec: str) -> MatrixRep:
    name, _, arg = spec.partition(":")
    name = name.strip().lower()
    if spec.startswith("@"):
        data = parse_json(spec, "representation")
        if not isinstance(data, dict) or "generators" not in data:
            raise BadInput("representation file needs 'generators' (and optionally 'conductor')")
        cond = int(data.get("conductor", 1))
        gens = data["generators"]
        if isinstance(gens, dict):
            gens = {k: mx.parse_matrix(v, cond) for k, v in gens.items()}
        else:
            gens = [mx.parse_matrix(v, cond) for v in gens]
        return MatrixRep.from_generators(group, gens)
    if name == "res":
        if group.parent is None:
            raise BadInput("res: needs a subgroup")
        return parse_rep(group.parent, arg).restrict(group)
    simple: dict[str, Callable[[FiniteGroup], MatrixRep]] = {
        "triv": trivial_rep, "sign": sign_rep, "std": standard_rep, "perm": permutation_rep, "reg": regular_rep,
    }
    if name in simple and not arg:
        return simple[name](group)
    if name == "lin":
        return linear_rep(_index(arg, linear_characters(group), "linear character"))
    if name == "heis":
        n = round(group.order ** (1 / 3))
        if n ** 3 != group.order or not group.name.startswith("heisenberg"):
            raise BadInput("heis:a needs a Heisenberg group")
        return heisenberg_rep(n, int(arg), group)
    raise BadInput(f"unknown representation {spec!r}")


def parse_character(group: FiniteGroup, spec: str) -> ClassFunction:
    """Like :func:`parse_rep`, plus ``irr:i`` for irreducible characters without matrices."""
    total = None
    for part in spec.split("+"):
        part = part.strip()
        if part.lower().startswith("irr:"):
            chi = _index(part[4:], irreducible_characters(group), "irreducible character")
        else:
            chi = parse_rep(group, part).character()
        total = chi if total is None else total + chi
    return total


def _hw(text: str) -> tuple[int, ...]:
    return tuple(parse_ints(text, "highest weight"))


def _fmt_hw(h) -> list[int]:
    return list(h.coeffs)


# ---------------------------------------------------------------------------
# commands


def cmd_recover(power: str):
    forward = sym_power if power == "sym" else tensor_power
    recover = recover_from_sym if power == "sym" else recover_from_tensor

    def run(p: dict, seed: int):
        w = parse_weights(p["weights"])
        got = recover(w, p["k"], p["n"])
        again = forward(got, p["k"])
        n = len(got)
        size = comb(n + p["k"] - 1, p["k"]) if power == "sym" else n ** p["k"]
        result = {"recovered": got.to_json(), "recovered_text": got.to_text(), "n": n}
        return result, [
            check("forward_recomputation_matches", again == w),
            check("size_matches", size == len(w), {"expected": size, "input": len(w)}),
        ]

    return run


def cmd_ext_search(p: dict, seed: int):
    k = p["k"]
    if p["weights"]:
        v = parse_weights(p["weights"])
        e1, e2 = ext_power(v, k), ext_power(dual(v), k)
        result = {
            "dim": len(v),
            "ext_equal_to_dual_ext": e1 == e2,
            "self_dual": v == dual(v),
            "ext_power": e1.to_json(),
        }
        return result, [check("ext_size_is_binomial", len(e1) == comb(len(v), k), {"size": len(e1)})]
    alg = get_algebra(p["algebra"])
    classes: dict[WeightMultiset, list] = {}
    sizes_ok = True
    for h in dominant_weights(alg, p["bound"], include_zero=False):
        w = irr_weights(alg, h)
        if len(w) < k or comb(len(w), k) > p["cap"]:
            continue
        e = ext_power(w, k)
        sizes_ok &= len(e) == comb(len(w), k)
        classes.setdefault(e, []).append(h)
    collisions = []
    for members in classes.values():
        if len(members) > 1:
            members = sorted(members, key=lambda h: h.coeffs)
            duals = {h.coeffs: dual_highest_weight(alg, h).coeffs for h in members}
            dual_pair = len(members) == 2 and duals[members[0].coeffs] == members[1].coeffs
            collisions.append({"members": [_fmt_hw(h) for h in members], "dual_pair": dual_pair,
                               "dim": weyl_dim(alg, members[0])})
    collisions.sort(key=lambda c: c["members"])
    result = {"algebra": alg.name, "bound": p["bound"], "k": k, "modules": sum(map(len, classes.values())),
              "collisions": collisions}
    return result, [check("ext_sizes_are_binomial", sizes_ok)]


def cmd_factorize(p: dict, seed: int):
    rep = check_unique_factorization(p["algebra"], p["bound"], p["max_factors"])
    return rep, [check("no_counterexamples", not rep["counterexamples"], {"count": len(rep["counterexamples"])})]


def cmd_adjoint_fibre(p: dict, seed: int):
    if p["product_example"]:
        rep = product_group_adjoint_counterexample()
        ok = rep["ad_equal"] and not rep["v_iso_w"] and not rep["v_iso_w_dual"]
        return rep, [check("adjoint_equal_but_not_isomorphic", ok),
                     check("dual_involution", rep["v_dual_dual_iso_v"])]
    alg = get_algebra(p["algebra"])
    hw = _hw(p["hw"])
    fibre = adjoint_fibre(alg, hw, p["bound"])
    dual_hw = dual_highest_weight(alg, hw)
    expected = sorted({tuple(hw), dual_hw.coeffs})
    got = [h.coeffs for h in fibre]
    result = {"algebra": alg.name, "hw": list(hw), "bound": p["bound"], "fibre": [list(h) for h in got],
              "dual": list(dual_hw.coeffs)}
    return result, [check("fibre_is_module_and_dual", got == expected, {"expected": [list(h) for h in expected]})]


def cmd_twist_search(p: dict, seed: int):
    g = parse_group(p["group"])
    r1, r2 = parse_rep(g, p["rep1"]), parse_rep(g, p["rep2"])
    eta = twist_search(r1, r2)
    result = {"group": g.name, "linear_characters": len(linear_characters(g)),
              "witness": None if eta is None else eta.describe()}
    checks = [check("linear_character_count", len(linear_characters(g)) * len(g.derived) == g.order)]
    if eta is not None:
        checks.append(check("witness_verified", r1.twist(eta).character() == r2.character()))
    else:
        checks.append(check("no_witness_among_all_candidates", all(
            r1.twist(c).character() != r2.character() for c in linear_characters(g))))
    return result, checks


def cmd_heisenberg(p: dict, seed: int):
    n, a, b = p["n"], p["a"], p["b"]
    k = p["k"] or n
    g = heisenberg_group(n)
    r1, r2 = heisenberg_rep(n, a, g), heisenberg_rep(n, b, g)
    c1, c2 = r1.character(), r2.character()
    rel = verify_heisenberg_relations(g)
    t = g.generate([g.element("A"), g.element("C")])
    d1, d2 = clifford_decompose(r1, t), clifford_decompose(r2, t)
    cmp = compare_fixed_sets(d1, d2)
    eta = twist_search(r1, r2)
    result = {
        "order": g.order,
        "classes": len(g.classes),
        "relations": rel,
        "norms": [str(c1.norm()), str(c2.norm())],
        "k": k,
        "kth_power_equal": kth_power_equal(c1, c2, k),
        "kth_power_equal_k1": kth_power_equal(c1, c2, 1),
        "twist_search": None if eta is None else eta.describe(),
        "linear_characters": len(linear_characters(g)),
        "clifford": {"rep1": d1.summary(), "rep2": d2.summary()},
        "multiplicity_one": d1.multiplicity_one and d2.multiplicity_one,
        "fixed_sets_equal": cmp["equal"],
    }
    checks = [
        check("relations", all(rel.values())),
        check("homomorphism_all_pairs", r1.verify_all_pairs() == g.order ** 2 if g.order <= 200 else True),
        check("irreducible", c1.norm() == 1 and c2.norm() == 1),
        check("commutant_dimension_one", commutant_dimension(r1) == 1 if r1.dim <= 4 else True),
        check("clifford_dimensions", sum(d1.multiplicities) == n),
    ]
    return result, checks


def _normal(g: FiniteGroup, spec: str) -> frozenset[int]:
    return g.require_normal(parse_subgroup(g, spec))


def cmd_clifford(p: dict, seed: int):
    g = parse_group(p["group"])
    rep = parse_rep(g, p["rep"])
    n = _normal(g, p["normal"])
    d = clifford_decompose(rep, n)
    dims = sum(int(c.degree) * m for c, m in zip(d.constituents, d.multiplicities))
    sets = d.fixed_sets()
    return {"group": g.name, **d.summary()}, [
        check("dimension_sum", dims == rep.dim, {"sum": dims, "dim": rep.dim}),
        check("identity_fixes_everything", sets[d.quotient.identity] == frozenset(range(len(d.constituents)))),
    ]


def _coset_members(g: FiniteGroup, n: frozenset[int]) -> list[list[int]]:
    reps, index = g.left_cosets(n)
    return [[x for x in range(g.order) if index[x] == i] for i in range(len(reps))]


def _lifts(g: FiniteGroup, members: list[list[int]], spec: str, rng: random.Random) -> list[int]:
    if not spec:
        return [rng.choice(c) for c in members]
    lifts = [_element(g, w.strip()) for w in spec.split(",") if w.strip()]
    if len(lifts) != len(members):
        raise BadInput(f"expected {len(members)} lifts, got {len(lifts)}")
    if sorted(next(i for i, c in enumerate(members) if x in c) for x in lifts) != list(range(len(members))):
        raise BadInput("lifts must contain one element from each coset")
    return lifts


def cmd_asai(p: dict, seed: int):
    g = parse_group(p["group"])
    n = _normal(g, p["normal"])
    sub = subgroup_of(g, n)
    rep = parse_rep(sub, p["rep"])
    members = _coset_members(g, n)
    rng = random.Random(seed)
    l1 = _lifts(g, members, p["lifts"], rng) if p["lifts"] else [c[0] for c in members]
    l2 = _lifts(g, members, p["lifts2"], rng)
    a1 = pre_asai(rep, conjugation_automorphisms(g, sub, l1))
    a2 = pre_asai(rep, conjugation_automorphisms(g, sub, l2))
    result = {
        "group": g.name,
        "subgroup_order": sub.order,
        "index": len(members),
        "dim": a1.dim,
        "lifts": [g.labels[x] for x in l1],
        "lifts2": [g.labels[x] for x in l2],
        "character": [str(v) for v in a1.character().values],
    }
    return result, [
        check("dimension", a1.dim == rep.dim ** len(members)),
        check("lift_independent", a1.character() == a2.character()),
    ]


def cmd_cocycle(p: dict, seed: int):
    g = parse_group(p["group"])
    r1, r2 = parse_rep(g, p["rep1"]), parse_rep(g, p["rep2"])
    if p["rep2_diag"]:
        r2 = r2.conjugate_by(mx.diagonal(parse_ints(p["rep2_diag"], "rep2-diag")))
    n = _normal(g, p["normal"])
    t = twist_cocycle(r1, r2, n)
    values = {g.generator_names[i]: mx.format_matrix(t(s)) for i, s in enumerate(g.generators)}
    result = {"group": g.name, "generator_values": values, "pairs_checked": t.pairs_checked,
              "all_scalar": t.all_scalar, "all_diagonal": t.all_diagonal}
    return result, [check("cocycle_identity", t.pairs_checked > 0, {"pairs": t.pairs_checked}),
                    check("commutes_with_subgroup", True, "verified during construction")]


def cmd_density(p: dict, seed: int):
    g = parse_group(p["group"])
    g0 = _normal(g, p["g0"])
    model = ComponentModel.build(g, g0, parse_character(g, p["rep1"]), parse_character(g, p["rep2"]))
    rep = orthogonality_audit(model, samples=p["samples"], seed=seed, workers=p["workers"])
    checks = [
        check("lambda_le_agreement", rep.lam <= rep.agreement),
        check("upper_bound", rep.upper_ok, {"mean": str(rep.mean_sq_char_diff), "bound": str(rep.upper_bound)}),
        check("lower_bound", rep.lower_ok is not False,
              "applies" if rep.lower_bound_applies else "not applicable: not two distinct irreducibles"),
    ]
    if rep.interval is not None:
        lo, hi = rep.interval
        checks.append(check("interval_contains_exact", lo <= float(rep.agreement) <= hi))
    return {"group": g.name, "m": model.m, **rep.to_json()}, checks


def _lattice_input(p: dict) -> lt.Lattice:
    data = parse_json(p["basis"], "basis")
    if isinstance(data, dict):
        return lt.Lattice.from_json(data)
    rows = lt.matrix_from_json(data)
    rank = p["rank"] or (len(rows[0]) if rows else None)
    if rank is None:
        raise BadInput("empty basis needs --rank")
    return lt.Lattice.span(rows, rank)


def cmd_lattice_saturate(p: dict, seed: int):
    lat = _lattice_input(p)
    sat = lt.saturate(lat)
    index = lt.saturation_index(lat)
    factors = lt.snf(lat.basis, lat.rank).invariant_factors if lat.basis else ()
    result = {"input": lat.to_json(), "saturation": sat.to_json(), "index": str(index),
              "is_direct_summand": lt.is_direct_summand(lat), "invariant_factors": [str(d) for d in factors]}
    return result, [
        check("idempotent", lt.saturate(sat) == sat),
        check("contains_input", sat.contains_lattice(lat)),
        check("same_rank", sat.dim == lat.dim),
        check("index_is_product_of_invariant_factors", index == prod(factors)),
    ]


def _map(text: str, what: str, source: int | None = None) -> lt.LatticeMap:
    data = parse_json(text, what)
    if isinstance(data, dict):
        return lt.LatticeMap.from_json(data)
    return lt.LatticeMap.from_rows(lt.matrix_from_json(data), source)


def cmd_lattice_lift(p: dict, seed: int):
    res = _map(p["restriction"], "restriction")
    ext = _map(p["extension"], "extension")
    center = _map(p["center"], "center", ext.target_rank - ext.source_rank) if p["center"] else None
    lift = lt.lift_torus_map(res, ext, center)
    section = lt.split_free_quotient(ext)
    proj = lt.free_quotient(ext).projection
    q = ext.target_rank - ext.source_rank
    return {"lift": lift.to_json(), "section": section.to_json()}, [
        check("square_commutes", lift.compose(ext).matrix == res.matrix),
        check("projection_section_identity",
              proj.compose(section).matrix == lt.LatticeMap.identity(q).matrix if q else True),
    ]


def cmd_selftest(p: dict, seed: int):
    filters = [f for item in p["filter"] or [] for f in item.split(",") if f.strip()]
    corrupt = [c for item in p["corrupt"] or [] for c in item.split(",") if c.strip()]
    results = run_acceptance(filters, corrupt)
    if not results:
        raise BadInput(f"no criterion matches {filters}")
    result = {"criteria": [r.to_json() for r in results], "lines": [r.line().split(" (")[0] for r in results]}
    return result, [check(f"{r.number}:{r.key}", r.passed) for r in results]


# ---------------------------------------------------------------------------
# parameter tables: name -> (type, default, help); None default means required

P = dict
COMMANDS: dict[str, tuple[Callable, dict, str]] = {
    "recover-sym": (cmd_recover("sym"), P(
        weights=(str, None, "weights: text 'mult c1 .. cr' per line, JSON, @file or -"),
        k=(int, None, "power"), n=(int, 0, "number of weights (0: infer)")), "recover W from Sym^k W"),
    "recover-tensor": (cmd_recover("tensor"), P(
        weights=(str, None, "weights as for recover-sym"), k=(int, None, "power"),
        n=(int, 0, "number of weights (0: infer)")), "recover W from the k-th tensor power"),
    "ext-search": (cmd_ext_search, P(
        weights=(str, "", "compare Ext^k of these weights and of their dual"), k=(int, 3, "exterior power"),
        algebra=(str, "A2", "A1, A2 or C2 for a sweep"), bound=(int, 2, "highest weight coordinate bound"),
        cap=(int, 20000, "skip modules whose Ext^k is larger")), "search for Ext^k collisions"),
    "factorize": (cmd_factorize, P(
        algebra=(str, "A2", "A1, A2 or C2"), bound=(int, 2, "coordinate bound"),
        max_factors=(int, 2, "largest number of tensor factors")), "unique tensor factorization sweep"),
    "adjoint-fibre": (cmd_adjoint_fibre, P(
        algebra=(str, "A2", "A1, A2 or C2"), hw=(str, "1,0", "highest weight"), bound=(int, 3, "search bound"),
        product_example=(bool, False, "run the A2 x A2 counterexample instead")), "modules with the same adjoint"),
    "twist-search": (cmd_twist_search, P(
        group=(str, None, "group name or @table.json"), rep1=(str, None, "representation"),
        rep2=(str, None, "representation")), "search a linear character with rep2 = rep1 x eta"),
    "heisenberg": (cmd_heisenberg, P(
        n=(int, 3, "odd prime"), a=(int, 1, "first parameter"), b=(int, 2, "second parameter"),
        k=(int, 0, "tensor power (0: n)")), "the Heisenberg pair"),
    "clifford": (cmd_clifford, P(
        group=(str, None, "group"), rep=(str, None, "representation"),
        normal=(str, None, "normal subgroup selector")), "restriction to a normal subgroup"),
    "asai": (cmd_asai, P(
        group=(str, None, "group"), normal=(str, None, "normal subgroup selector"),
        rep=(str, None, "representation of the normal subgroup (res:<rep> restricts)"),
        lifts=(str, "", "coset lifts, comma separated (default: least elements)"),
        lifts2=(str, "", "second lift system (default: random from --seed)")),
        "pre-Asai representation under two lift systems"),
    "cocycle": (cmd_cocycle, P(
        group=(str, None, "group"), rep1=(str, None, "representation"), rep2=(str, None, "representation"),
        rep2_diag=(str, "", "conjugate rep2 by this diagonal matrix"),
        normal=(str, None, "normal subgroup on which the reps agree")), "twist cocycle T(s) = rep1(s)^-1 rep2(s)"),
    "density": (cmd_density, P(
        group=(str, None, "group"), g0=(str, None, "normal subgroup playing the identity component"),
        rep1=(str, None, "character (rep names or irr:i)"), rep2=(str, None, "character"),
        samples=(int, 10000, "uniform samples (0: skip)"), workers=(int, 1, "sampling threads")),
        "density and orthogonality audit"),
    "lattice-saturate": (cmd_lattice_saturate, P(
        basis=(str, None, "JSON rows, lattice JSON or @file"), rank=(int, 0, "ambient rank for an empty basis")),
        "torsion closure of a sublattice"),
    "lattice-lift": (cmd_lattice_lift, P(
        restriction=(str, None, "X(T) -> X(C) matrix JSON"), extension=(str, None, "X(T) -> X(T') matrix JSON"),
        center=(str, "", "X(Z) -> X(C) matrix JSON")), "extend a character map along a split inclusion"),
    "selftest": (cmd_selftest, P(
        filter=(list, None, "criterion number, key or module (repeatable)"),
        corrupt=(list, None, "mutate an expected value (negative control)")), "run the acceptance suite"),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise BadInput(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="recoverrep", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, params, helptext) in COMMANDS.items():
        sp = sub.add_parser(name, help=helptext)
        for key, (typ, default, h) in params.items():
            flag = "--" + key.replace("_", "-")
            if typ is bool:
                sp.add_argument(flag, action="store_const", const=True, default=None, help=h)
            elif typ is list:
                sp.add_argument(flag, action="append", default=None, help=h)
            else:
                sp.add_argument(flag, type=typ, default=None, help=h)
        sp.add_argument("--config", help="JSON file with parameters (command-line flags win)")
        sp.add_argument("--seed", type=int, default=None, help=f"random seed (default ${SEED_ENV} or 0)")
        sp.add_argument("--output", default="-", help="report path (default stdout)")
        sp.add_argument("--format", choices=("json", "text"), default="json")
        sp.add_argument("--timing", action="store_true", help="fill wall_time_ms (reports stop being byte-stable)")
    return parser


def resolve(args: argparse.Namespace) -> tuple[dict, int]:
    _, params, _ = COMMANDS[args.command]
    given = {k: getattr(args, k) for k in params}
    if args.config:
        data = parse_json("@" + args.config, "config")
        if not isinstance(data, dict):
            raise BadInput("config must be a JSON object")
        extra = {k: v for k, v in data.items() if k.replace("-", "_") not in params and k != "seed"}
        if extra:
            raise BadInput(f"unknown config keys for {args.command}: {sorted(extra)}")
        for k, v in data.items():
            key = k.replace("-", "_")
            if key == "seed":
                if args.seed is None:
                    args.seed = int(v)
            elif given[key] is None:
                typ = params[key][0]
                given[key] = v if typ in (bool, list) else typ(v)
    for key, (typ, default, _) in params.items():
        if given[key] is None:
            if default is None and typ not in (bool, list):
                raise BadInput(f"{args.command}: missing --{key.replace('_', '-')}")
            given[key] = default
    if args.seed is None:
        env = os.environ.get(SEED_ENV, "0")
        try:
            args.seed = int(env)
        except ValueError:
            raise BadInput(f"${SEED_ENV} must be an integer, got {env!r}") from None
    if "n" in given and args.command.startswith("recover") and given["n"] == 0:
        given["n"] = None
    return given, args.seed


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (set, frozenset)):
        return sorted(x)
    if isinstance(x, tuple):
        return list(x)
    return str(x)


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2, default=_jsonable) + "\n"
    lines = [f"command: {report['command']}"]
    if "error" in report:
        lines.append(f"error: {report['error']['name']}: {report['error']['message']}")
    for key, value in sorted((report.get("result") or {}).items()):
        lines.append(f"{key}: {json.dumps(value, sort_keys=True, default=_jsonable)}")
    for c in report["checks"]:
        lines.append(f"[{'PASS' if c['passed'] else 'FAIL'}] {c['name']}")
    return "\n".join(lines) + "\n"


def run(argv: list[str] | None = None) -> tuple[dict, int, argparse.Namespace]:
    args = build_parser().parse_args(argv)
    params, seed = resolve(args)
    config = {"command": args.command, "params": params, "seed": seed, "format": args.format, "output": args.output}
    func = COMMANDS[args.command][0]
    t0 = time.perf_counter()
    try:
        result, checks = func(params, seed)
        code = 0 if all(c["passed"] for c in checks) else 1
        report = {"command": args.command, "config": config, "result": result, "checks": checks}
    except RecoverRepError as exc:
        code = 2
        report = {
            "command": args.command,
            "config": config,
            "error": {"name": type(exc).__name__, "message": str(exc)},
            "result": None,
            "checks": [check("completed", False, type(exc).__name__)],
        }
    report["wall_time_ms"] = round((time.perf_counter() - t0) * 1000, 3) if args.timing else None
    return report, code, args


def main(argv: list[str] | None = None) -> int:
    try:
        report, code, args = run(argv)
        text = render(report, args.format)
        if args.output in ("-", ""):
            sys.stdout.write(text)
        else:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        return code
    except BadInput as exc:
        print(f"recoverrep: error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, KeyError, OSError) as exc:
        # library input validation (bad tables, ragged matrices, unknown presets), unwritable output
        msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        print(f"recoverrep: error: {msg}", file=sys.stderr)
        return 3


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

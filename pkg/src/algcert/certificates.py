"""Executable generation certificates for commutator Lie algebras.

Each operation here builds a finite generating set the way the corresponding
claim prescribes, closes it with the saturation engine, and compares the
result against an independently computed target subspace. A certificate is
only ``pass`` when the closed subspace equals the target exactly; failed
generation hypotheses (ReR = R and friends) yield ``hypothesis-not-met``
rather than a verdict, so a pass is never asserted where the claim does not
apply.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction

from .algebra import ideal_span, unital_hull, validate_presentation
from .closure import (
    GeneratorSet,
    assoc_closure,
    generator_set,
    lie_closure,
    pair_closure,
    word_budget,
)
from .decomposition import kh_split, peirce_decompose, z_grading
from .errors import (
    BudgetExceededError,
    CapExceededError,
    FormatError,
    MissingGeneratorsError,
)
from .linalg import CombinationSolver, SpanBuilder

PASS = "pass"
FAIL = "fail"
HYPOTHESIS_NOT_MET = "hypothesis-not-met"

CLAIMS = (
    "lemma1",
    "lemma2",
    "lemma3",
    "lemma4",
    "lemma5",
    "lemma6",
    "lemma7",
    "theorem1",
    "theorem2",
    "lemma8",
    "lemma9",
    "stagnation",
)


@dataclass
class Certificate:
    claim: str
    verdict: str
    presentation: object
    generators: GeneratorSet | None = None
    trace: object = None
    target: object = None
    detail: dict = dataclass_field(default_factory=dict)
    seed: int | None = None

    def to_json_dict(self):
        P = self.presentation
        d = {
            "claim": self.claim,
            "verdict": self.verdict,
            "algebra": P.name,
            "seed": self.seed,
            "detail": self.detail,
        }
        if self.generators is not None:
            gens = []
            sides = self.generators.sides or (None,) * len(self.generators.elements)
            for (label, el, prov), side in zip(self.generators.elements, sides):
                entry = {"label": label, "provenance": prov, "element": P.render(el)}
                if side is not None:
                    entry["side"] = side
                gens.append(entry)
            d["generators"] = {
                "structure": self.generators.structure,
                "elements": gens,
            }
        else:
            d["generators"] = None
        d["trace"] = self.trace.to_json_dict() if self.trace is not None else None
        if self.target is None:
            d["target_rank"] = None
        elif isinstance(self.target, tuple):
            d["target_rank"] = self.target[0].rank + self.target[1].rank
            d["target_rank_minus"] = self.target[0].rank
            d["target_rank_plus"] = self.target[1].rank
        else:
            d["target_rank"] = self.target.rank
        return d


def _final_equals(final, target):
    if isinstance(target, tuple) != isinstance(final, tuple):
        return False
    if isinstance(target, tuple):
        return final[0] == target[0] and final[1] == target[1]
    return final == target


def _verdict(final, target):
    return PASS if _final_equals(final, target) else FAIL


# -- random sampling ------------------------------------------------------


def random_scalar(field, rng, lo=-3, hi=3):
    if hasattr(field, "p"):
        return rng.randrange(field.p)
    return Fraction(rng.randint(lo, hi))


def random_element(P, rng, subspace=None, nonzero=False):
    rows = subspace.basis if subspace is not None else [
        P.basis_element(i).coords for i in range(P.dim)
    ]
    for _ in range(64):
        acc = P.zero()
        for row in rows:
            c = random_scalar(P.field, rng)
            if c:
                acc = P.add(acc, P.scale(c, P.element(row)))
        if not nonzero or not P.is_zero(acc):
            return acc
    raise ValueError("could not sample a nonzero element (zero subspace?)")


# -- hypotheses ------------------------------------------------------------


def _resolve_idempotent(P, e):
    if e is None:
        e = "e"
    if isinstance(e, str):
        if e not in P.idempotents:
            raise FormatError(f"no idempotent named {e!r} in {P.name}")
        return P.idempotents[e]
    return e


def principal_ideal(P, x):
    """Two-sided ideal generated by x (contains x itself)."""
    b = SpanBuilder(P.field, P.dim)
    frontier = []
    if b.add(x.coords):
        frontier.append(x)
    while frontier:
        new = []
        for r in frontier:
            for i in range(P.dim):
                e_i = P.basis_element(i)
                for w in (P.mul(e_i, r), P.mul(r, e_i)):
                    if b.add(w.coords):
                        new.append(w)
        frontier = new
    return b.subspace()


def _desk_simple(P):
    """Desk-scale check: every basis element generates R as an ideal."""
    return all(
        principal_ideal(P, P.basis_element(i)).is_full for i in range(P.dim)
    )


def _generators_generate(P):
    """The declared generators (with the unit, when present) span R as an
    associative subalgebra."""
    if not P.generators:
        return False
    items = [(name, el, "declared") for name, el in _sorted_generators(P)]
    if P.unital:
        items.append(("@1", P.unit, "unit"))
    trace = assoc_closure(P, generator_set("associative", items))
    return trace.final.is_full


def _desk_semiprime(P):
    """Desk-scale check: no basis element generates a square-zero ideal.

    Returns (ok, witness_label_or_None).
    """
    for i in range(P.dim):
        ideal = principal_ideal(P, P.basis_element(i))
        if ideal.rank == 0:
            continue
        rows = [P.element(r) for r in ideal.basis]
        if all(P.is_zero(P.mul(u, v)) for u in rows for v in rows):
            return False, P.basis_labels[i]
    return True, None


def hypotheses_for(P, e, wants):
    """Evaluate named generation hypotheses for the idempotent e."""
    out = {}
    estar = P.involve(e) if P.has_involution else None
    for name in wants:
        if name == "involution":
            out[name] = P.has_involution
        elif name == "e^2=e":
            out[name] = P.equal(P.mul(e, e), e)
        elif name == "ee*=0":
            out[name] = P.has_involution and P.is_zero(P.mul(e, estar))
        elif name == "e*e=0":
            out[name] = P.has_involution and P.is_zero(P.mul(estar, e))
        elif name == "ReR=R":
            out[name] = ideal_span(P, e).is_full
        elif name == "Re*R=R":
            out[name] = P.has_involution and ideal_span(P, estar).is_full
        elif name == "R(1-e)R=R":
            out[name] = ideal_span(P, P.neg(e), unit_coeff=1).is_full
        elif name == "R(1-e-e*)R=R":
            out[name] = P.has_involution and ideal_span(
                P, P.neg(P.add(e, estar)), unit_coeff=1
            ).is_full
        elif name == "e+e*=1":
            out[name] = (
                P.has_involution
                and P.unital
                and P.equal(P.add(e, estar), P.unit)
            )
        elif name == "R=alg<gens>":
            out[name] = _generators_generate(P)
        elif name == "simple(desk-scale)":
            out[name] = _desk_simple(P)
        elif name == "semiprime(desk-scale)":
            ok, witness = _desk_semiprime(P)
            out[name] = ok
            if not ok:
                out["square-zero-ideal-witness"] = witness
        else:
            raise ValueError(f"unknown hypothesis {name!r}")
    return out


def _hypothesis_certificate(P, claim, results, seed=None, extra=None):
    failed = [k for k, v in results.items() if v is False]
    detail = {"hypotheses": results, "failed_hypotheses": failed}
    if extra:
        detail.update(extra)
    return Certificate(
        claim=claim,
        verdict=HYPOTHESIS_NOT_MET,
        presentation=P,
        detail=detail,
        seed=seed,
    )


def _require_valid(P):
    report = validate_presentation(P)
    if report.violations:
        first = report.violations[0]
        raise FormatError(
            f"presentation violates {first.axiom} at {first.indices}: "
            f"{first.message}"
        )
    return report


# -- targets ---------------------------------------------------------------


def commutator_span(P):
    """Span of all [b_i, b_j] over basis pairs."""
    b = SpanBuilder(P.field, P.dim)
    for i in range(P.dim):
        for j in range(i + 1, P.dim):
            b.add(P.commutator(P.basis_element(i), P.basis_element(j)).coords)
    return b.subspace()


def derived_subspace(P):
    """The derived subalgebra of R under the commutator.

    The commutator span is already bracket-closed; the closure pass is run
    anyway so the result is certified closed rather than assumed.
    """
    span = commutator_span(P)
    if span.rank == 0:
        return span
    gens = generator_set(
        "lie",
        [(f"c{k}", P.element(row), "commutator-span") for k, row in enumerate(span.basis)],
    )
    return lie_closure(P, gens).final


def skew_commutator_span(P):
    """Span of all [k_i, k_j] over a basis of the skew part K."""
    K = kh_split(P).K
    rows = [P.element(r) for r in K.basis]
    b = SpanBuilder(P.field, P.dim)
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            b.add(P.commutator(rows[i], rows[j]).coords)
    return b.subspace()


def derived_K_subspace(P):
    """The derived subalgebra [K, K] of the skew part, certified closed."""
    span = skew_commutator_span(P)
    if span.rank == 0:
        return span
    gens = generator_set(
        "lie",
        [(f"k{k}", P.element(row), "K-commutator-span") for k, row in enumerate(span.basis)],
    )
    return lie_closure(P, gens).final


# -- working copy / word machinery ------------------------------------------


def _working(P):
    """A unital presentation to compute in: P itself, or its hull."""
    if P.unital:
        return P, (lambda el: el), (lambda el: el)
    H = unital_hull(P)
    F = P.field

    def lift(el):
        return H.element(tuple(el.coords) + (F.zero,))

    def lower(el):
        if el.coords[-1]:
            raise FormatError("element does not lie inside the base algebra")
        return P.element(el.coords[:-1])

    return H, lift, lower


def _sorted_generators(P):
    return [(name, P.generators[name]) for name in sorted(P.generators)]


class _WordLevels:
    """Length-graded, zero-pruned enumeration of products of generators."""

    def __init__(self, Pw, gens, budget):
        self.Pw = Pw
        self.gens = gens
        self.budget = budget
        self.count = 0
        first = []
        for name, el in gens:
            self._tick()
            if not Pw.is_zero(el):
                first.append((name, el))
        self.levels = [first]

    def _tick(self):
        self.count += 1
        if self.count > self.budget:
            raise BudgetExceededError(self.count, self.budget)

    def level(self, length):
        """Nonzero products of exactly ``length`` generators."""
        if length < 1:
            raise ValueError("word length must be >= 1")
        while len(self.levels) < length:
            prev = self.levels[-1]
            nxt = []
            for lab, w in prev:
                for name, g in self.gens:
                    self._tick()
                    prod = self.Pw.mul(w, g)
                    if not self.Pw.is_zero(prod):
                        nxt.append((f"{lab}*{name}", prod))
            self.levels.append(nxt)
        return self.levels[length - 1]

    def words_upto(self, length, include_empty=False):
        out = [("", None)] if include_empty else []
        for n in range(1, length + 1):
            out.extend(self.level(n))
        return out


def _sandwich(Pw, u, mid, v):
    """u * mid * v where u, v may be None (empty word)."""
    left = mid if u is None else Pw.mul(u, mid)
    return left if v is None else Pw.mul(left, v)


class _SandwichWitnesses:
    """Finds minimal-length decompositions target = sum alpha * u*mid*v.

    Words u, v range over products of the declared generators, the empty
    word included (it stands for the hull's unit). Lengths grow one at a
    time and the first solvable length is recorded per target, so the
    witnesses are minimal and deterministic.
    """

    def __init__(self, Pw, mid, words, cap):
        self.Pw = Pw
        self.mid = mid
        self.words = words
        self.cap = cap
        self.solver = CombinationSolver(Pw.field, Pw.dim)
        self.products = []  # (u_label, u_el, v_label, v_el)
        self.length = -1

    def _grow_to(self, L):
        while self.length < L:
            self.length += 1
            new = self.words.level(self.length) if self.length >= 1 else [("", None)]
            old = self.words.words_upto(self.length - 1, include_empty=True) if self.length >= 1 else []
            # all pairs (u, v) with max(|u|, |v|) == current length
            pairs = []
            for ul, u in new:
                for vl, v in self.words.words_upto(self.length, include_empty=True):
                    pairs.append((ul, u, vl, v))
            for ul, u in old:
                for vl, v in new:
                    pairs.append((ul, u, vl, v))
            for ul, u, vl, v in pairs:
                prod = _sandwich(self.Pw, u, self.mid, v)
                self.products.append((ul, u, vl, v))
                self.solver.add(prod.coords)

    def decompose(self, target, what):
        """(L, terms) with terms = [(coeff, u_label, u_el, v_label, v_el)]."""
        for L in range(0, self.cap + 1):
            self._grow_to(L)
            sol = self.solver.solve(target.coords)
            if sol is not None:
                terms = [
                    (c,) + self.products[i] for i, c in sorted(sol.items())
                ]
                return L, terms
        raise CapExceededError(what, self.cap)

    def decompose_upto(self, target, extra, what):
        """Union of decomposition terms at the minimal length and up to
        ``extra`` longer word-span levels (more witnesses on retries)."""
        Lmin, terms = self.decompose(target, what)
        out = list(terms)
        for L in range(Lmin + 1, min(Lmin + extra, self.cap) + 1):
            self._grow_to(L)
            sol = self.solver.solve(target.coords)
            if sol is not None:
                out.extend((c,) + self.products[i] for i, c in sorted(sol.items()))
        return Lmin, out


# -- lemma1 ---------------------------------------------------------------


def lemma1_certificate(P, e=None):
    """[R,R] is generated as a Lie algebra by eR(1-e) + (1-e)Re."""
    e = _resolve_idempotent(P, e)
    hyp = hypotheses_for(P, e, ("e^2=e", "ReR=R", "R(1-e)R=R"))
    if not all(hyp.values()):
        return _hypothesis_certificate(P, "lemma1", hyp)
    pd = peirce_decompose(P, e)
    items = []
    for name, comp in (("eR(1-e)", pd.eRf), ("(1-e)Re", pd.fRe)):
        for k, row in enumerate(comp.basis):
            items.append((f"{name}:{k}", P.element(row), name))
    gens = generator_set("lie", items)
    trace = lie_closure(P, gens)
    target = derived_subspace(P)
    span = commutator_span(P)
    return Certificate(
        claim="lemma1",
        verdict=_verdict(trace.final, target),
        presentation=P,
        generators=gens,
        trace=trace,
        target=target,
        detail={
            "hypotheses": hyp,
            "peirce_dims": pd.dims(),
            "commutator_span_rank": span.rank,
            "derived_rank": target.rank,
        },
    )


# -- lemma2 ---------------------------------------------------------------


def _lemma2_impl(P, e, f=None, cap=6, budget=None):
    """Shared construction for the bounded sandwich-word generating set.

    Returns (GeneratorSet, info) where info carries d, the word bound, the
    pair components (eRf-span, fRe-span) and witness lengths per generator.
    """
    budget = word_budget(budget)
    Pw, lift, lower = _working(P)
    e_w = lift(e)
    f_is_complement = f is None
    f_w = Pw.sub(Pw.unit, e_w) if f_is_complement else lift(f)

    gens = [(name, lift(el)) for name, el in _sorted_generators(P)]
    if not gens:
        raise MissingGeneratorsError(f"{P.name} declares no generators")

    # Pair components over the original algebra's basis.
    comp_minus_b = SpanBuilder(P.field, P.dim)
    comp_plus_b = SpanBuilder(P.field, P.dim)
    for i in range(P.dim):
        b = lift(P.basis_element(i))
        comp_minus_b.add(lower(_sandwich(Pw, e_w, b, f_w)).coords)
        comp_plus_b.add(lower(_sandwich(Pw, f_w, b, e_w)).coords)
    comp_minus = comp_minus_b.subspace()
    comp_plus = comp_plus_b.subspace()

    words = _WordLevels(Pw, gens, budget)
    wit_e = _SandwichWitnesses(Pw, e_w, words, cap)
    wit_f = _SandwichWitnesses(Pw, f_w, words, cap)
    lengths = {}
    d = 0
    for name, el in gens:
        Le, _ = wit_e.decompose(el, f"{name} over e")
        Lf, _ = wit_f.decompose(el, f"{name} over f")
        lengths[name] = (Le, Lf)
        d = max(d, Le, Lf)
    bound = 3 * d + 1

    items = []
    sides = []
    got_minus = SpanBuilder(P.field, P.dim)
    got_plus = SpanBuilder(P.field, P.dim)
    done = False
    for length in range(1, bound + 1):
        if done:
            break
        for lab, u in words.level(length):
            gm = lower(_sandwich(Pw, e_w, u, f_w))
            if got_minus.add(gm.coords):
                items.append((f"e*{lab}*f", gm, f"word:{lab}"))
                sides.append("-")
            gp = lower(_sandwich(Pw, f_w, u, e_w))
            if got_plus.add(gp.coords):
                items.append((f"f*{lab}*e", gp, f"word:{lab}"))
                sides.append("+")
            if (
                got_minus.rank == comp_minus.rank
                and got_plus.rank == comp_plus.rank
            ):
                # Every remaining word is already inside the spans, so the
                # deduplicated set is complete.
                done = True
                break

    gens_out = generator_set("assoc-pair", items, sides)
    info = {
        "d": d,
        "word_bound": bound,
        "witness_lengths": lengths,
        "components": (comp_minus, comp_plus),
        "f_is_complement": f_is_complement,
    }
    return gens_out, info


def lemma2_generating_set(P, e=None, f=None, cap=6, budget=None):
    """Sandwich words e*u*f and f*u*e of bounded length, deduplicated by span.

    The bound is 3d+1 where d is the largest word length appearing in the
    minimal decompositions of the declared generators over e and over f.
    f defaults to 1 - e (taken in the hull when the algebra is not unital).
    """
    e = _resolve_idempotent(P, e)
    gens_out, _ = _lemma2_impl(P, e, f, cap, budget)
    return gens_out


def lemma2_certificate(P, e=None, f=None, cap=6, budget=None):
    """The bounded word set generates the associative pair (eRf, fRe)."""
    e = _resolve_idempotent(P, e)
    wants = ["e^2=e", "R=alg<gens>", "ReR=R"]
    if f is None:
        wants.append("R(1-e)R=R")
    hyp = hypotheses_for(P, e, wants)
    if f is not None:
        hyp["RfR=R"] = ideal_span(P, f).is_full
    if not all(hyp.values()):
        return _hypothesis_certificate(P, "lemma2", hyp)
    gens, info = _lemma2_impl(P, e, f, cap, budget)
    trace = pair_closure(P, gens, "assoc-pair", components=info["components"])
    target = info["components"]
    return Certificate(
        claim="lemma2",
        verdict=_verdict(trace.final, target),
        presentation=P,
        generators=gens,
        trace=trace,
        target=target,
        detail={
            "hypotheses": hyp,
            "d": info["d"],
            "word_bound": info["word_bound"],
            "component_dims": (target[0].rank, target[1].rank),
        },
    )


# -- lemma3 ---------------------------------------------------------------


def _distinct_index_monomials(P, pair_gens, budget=None):
    """Alternating monomials whose outer-side indices are pairwise distinct.

    For the '+' family these are a+_{i1} b-_{j1} a+_{i2} ... a+_{i_{s+1}}
    with distinct i's and arbitrary j's, and symmetrically for '-'.
    Deduplicated by span per side.
    """
    budget = word_budget(budget)
    count = 0
    by_side = {"+": [], "-": []}
    for (label, el, _), side in zip(pair_gens.elements, pair_gens.sides):
        by_side[side].append((label, el))
    items = []
    sides = []
    for sigma in ("-", "+"):
        outer = by_side[sigma]
        inner = by_side["-" if sigma == "+" else "+"]
        got = SpanBuilder(P.field, P.dim)
        for s in range(len(outer)):
            if s > 0 and not inner:
                break
            for iseq in itertools.permutations(range(len(outer)), s + 1):
                for jseq in itertools.product(range(len(inner)), repeat=s):
                    count += 1
                    if count > budget:
                        raise BudgetExceededError(count, budget)
                    el = outer[iseq[0]][1]
                    word = outer[iseq[0]][0]
                    for t in range(s):
                        el = P.mul(P.mul(el, inner[jseq[t]][1]), outer[iseq[t + 1]][1])
                        word += f"*{inner[jseq[t]][0]}*{outer[iseq[t + 1]][0]}"
                    if P.is_zero(el):
                        continue
                    if got.add(el.coords):
                        items.append((f"mono{sigma}{len(items)}", el, f"monomial:{word}"))
                        sides.append(sigma)
    return generator_set("jordan-pair", items, sides)


def lemma3_jordan_check(P, pair_generators, seed=0, samples=100):
    """Jordan-pair generation and the reduction identities, checked exactly.

    (a) On random substitutions from the pair generated by the input set,
        x+y-u+v-u+ + u+v-x+y-u+ equals the symmetrized triple
        {x+y-u+, v-, u+}, and the linearized five-slot identity holds.
    (b) The Jordan-pair closure of the distinct-index monomials equals the
        associative-pair closure of the generators.
    """
    if pair_generators.structure not in ("assoc-pair", "jordan-pair"):
        raise ValueError("lemma3 needs pair generators")
    assoc_gens = GeneratorSet(
        "assoc-pair", pair_generators.elements, pair_generators.sides
    )
    target_trace = pair_closure(P, assoc_gens, "assoc-pair")
    comp_minus, comp_plus = target_trace.final

    rng = random.Random(seed)
    identity_checks = 0
    for _ in range(samples):
        x = random_element(P, rng, comp_plus)
        u = random_element(P, rng, comp_plus)
        y = random_element(P, rng, comp_minus)
        v = random_element(P, rng, comp_minus)
        xyu = P.triple(x, y, u)
        lhs = P.add(P.mul(P.mul(xyu, v), u), P.mul(P.mul(u, v), xyu))
        rhs = P.jordan_triple(xyu, v, u)
        if not P.equal(lhs, rhs):
            return Certificate(
                "lemma3", FAIL, P, generators=pair_generators,
                detail={"identity": "symmetrized", "status": "violated"}, seed=seed,
            )
        u1 = random_element(P, rng, comp_plus)
        u2 = random_element(P, rng, comp_plus)
        lhs2 = P.mul(P.mul(x, y), P.jordan_triple(u1, v, u2))
        rhs2 = P.add(
            P.jordan_triple(P.triple(x, y, u1), v, u2),
            P.jordan_triple(P.triple(x, y, u2), v, u1),
        )
        rhs2 = P.sub(rhs2, P.jordan_triple(u1, P.triple(v, x, y), u2))
        if not P.equal(lhs2, rhs2):
            return Certificate(
                "lemma3", FAIL, P, generators=pair_generators,
                detail={"identity": "linearized", "status": "violated"}, seed=seed,
            )
        identity_checks += 2

    monomials = _distinct_index_monomials(P, pair_generators)
    trace = pair_closure(P, monomials, "jordan-pair", components=target_trace.final)
    verdict = _verdict(trace.final, target_trace.final)
    return Certificate(
        claim="lemma3",
        verdict=verdict,
        presentation=P,
        generators=monomials,
        trace=trace,
        target=target_trace.final,
        detail={
            "identity_checks": identity_checks,
            "monomial_count": len(monomials.elements),
            "pair_dims": (comp_minus.rank, comp_plus.rank),
        },
        seed=seed,
    )


# -- theorem1 ---------------------------------------------------------------


def theorem1_certify(P, e=None, seed=0, cap=6, samples=100, budget=None):
    """Pipeline certificate: [R,R] is finitely generated.

    Bounded sandwich words generate the off-diagonal associative pair; the
    distinct-index monomials over them generate its Jordan pair; the same
    monomials Lie-generate [R,R]. The bracket transfer identity
    {a,b,c} = [[a,b],c] is spot-checked exactly along the way.
    """
    _require_valid(P)
    e = _resolve_idempotent(P, e)
    hyp = hypotheses_for(P, e, ("e^2=e", "R=alg<gens>", "ReR=R", "R(1-e)R=R"))
    if not all(hyp.values()):
        return _hypothesis_certificate(P, "theorem1", hyp, seed=seed)

    pair_gens, info = _lemma2_impl(P, e, None, cap, budget)
    comp_minus, comp_plus = info["components"]

    rng = random.Random(seed)
    transfer_checks = 0
    for _ in range(samples):
        for outer, inner in ((comp_minus, comp_plus), (comp_plus, comp_minus)):
            a = random_element(P, rng, outer)
            c = random_element(P, rng, outer)
            b = random_element(P, rng, inner)
            lhs = P.jordan_triple(a, b, c)
            rhs = P.commutator(P.commutator(a, b), c)
            if not P.equal(lhs, rhs):
                return Certificate(
                    "theorem1", FAIL, P,
                    detail={"identity": "bracket-transfer", "status": "violated"},
                    seed=seed,
                )
            transfer_checks += 1

    monomials = _distinct_index_monomials(P, pair_gens, budget)
    jordan_trace = pair_closure(
        P, monomials, "jordan-pair", components=(comp_minus, comp_plus)
    )
    jordan_ok = _final_equals(jordan_trace.final, (comp_minus, comp_plus))

    lie_gens = generator_set(
        "lie", [(lab, el, prov) for lab, el, prov in monomials.elements]
    )
    trace = lie_closure(P, lie_gens)
    target = derived_subspace(P)
    span = commutator_span(P)
    verdict = PASS if jordan_ok and _final_equals(trace.final, target) else FAIL
    return Certificate(
        claim="theorem1",
        verdict=verdict,
        presentation=P,
        generators=lie_gens,
        trace=trace,
        target=target,
        detail={
            "hypotheses": hyp,
            "d": info["d"],
            "word_bound": info["word_bound"],
            "pair_generator_count": len(pair_gens.elements),
            "jordan_generator_count": len(monomials.elements),
            "jordan_generation_ok": jordan_ok,
            "pair_dims": (comp_minus.rank, comp_plus.rank),
            "transfer_identity_checks": transfer_checks,
            "commutator_span_rank": span.rank,
            "derived_rank": target.rank,
        },
        seed=seed,
    )


# -- lemma4 ---------------------------------------------------------------

_THEOREM2_HYPS = ("involution", "e^2=e", "ee*=0", "e*e=0", "ReR=R", "R(1-e-e*)R=R")
_THEOREM2_FULL_HYPS = _THEOREM2_HYPS + ("R=alg<gens>",)


def _graded_split(P, e, grading=None):
    grading = grading if grading is not None else z_grading(P, e)
    kh = kh_split(P, grading)
    return grading, kh


def _squares_family(P, K1):
    """K1-basis vectors and their pairwise sums; spans {k^2 : k in K1}.

    Polarization: (k+k')^2 - k^2 - k'^2 = 2 k o k', so squares of the family
    span the same space as all squares of K1 (characteristic is not 2).
    """
    rows = [P.element(r) for r in K1.basis]
    family = list(rows)
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            family.append(P.add(rows[i], rows[j]))
    return family


def lemma4_check(P, grading=None, e=None):
    """K_{±2} = [K_{±1}, K_{±1}] and H_{±2} = span{k^2 : k in K_{±1}}."""
    e = grading.e if grading is not None else _resolve_idempotent(P, e)
    hyp = hypotheses_for(P, e, _THEOREM2_HYPS)
    if not all(hyp.values()):
        return _hypothesis_certificate(P, "lemma4", hyp)
    grading, kh = _graded_split(P, e, grading)
    checks = {}
    ok = True
    for sigma in (1, -1):
        K1, _ = kh.graded[sigma]
        K2, H2 = kh.graded[2 * sigma]
        rows = [P.element(r) for r in K1.basis]
        bb = SpanBuilder(P.field, P.dim)
        for i in range(len(rows)):
            for j in range(i + 1, len(rows)):
                bb.add(P.commutator(rows[i], rows[j]).coords)
        bracket_span = bb.subspace()
        sq = SpanBuilder(P.field, P.dim)
        for k in _squares_family(P, K1):
            sq.add(P.mul(k, k).coords)
        square_span = sq.subspace()
        checks[f"K_{2 * sigma}=[K_{sigma},K_{sigma}]"] = bracket_span == K2
        checks[f"H_{2 * sigma}=span(k^2)"] = square_span == H2
        ok = ok and bracket_span == K2 and square_span == H2
    return Certificate(
        claim="lemma4",
        verdict=PASS if ok else FAIL,
        presentation=P,
        detail={
            "hypotheses": hyp,
            "equalities": checks,
            "graded_dims": {
                str(i): (kh.graded[i][0].rank, kh.graded[i][1].rank)
                for i in range(-2, 3)
            },
        },
    )


# -- lemma5 ---------------------------------------------------------------


def _brace_set(P, mid_name, witnesses, s_right_of):
    """Braces {mid * w * s} over decomposition right-words w."""
    out = []
    seen = SpanBuilder(P.field, P.dim)
    for w_label, w_el in witnesses:
        el = s_right_of(w_el)
        br = P.brace(el)
        if P.is_zero(br):
            continue
        if seen.add(br.coords):
            out.append((f"{{{mid_name}*{w_label or '1'}*s}}", br, f"witness:{w_label or '1'}"))
    return out


def lemma5_sets(P, grading=None, e=None, cap=6, retries=2, budget=None):
    """Finite skew sets M_{-1}, M_1 with R_1 = M_{-1}R_2 + R_2M_{-1} and the
    mirror equality, built from braces over decomposition witnesses.

    Returns (M_minus, M_plus, info); info["spans_ok"] records whether the
    two spanning equalities hold (retried with longer witness words first).
    """
    e = grading.e if grading is not None else _resolve_idempotent(P, e)
    grading, kh = _graded_split(P, e, grading)
    estar = grading.estar
    ee = P.add(e, estar)

    budget = word_budget(budget)
    Pw, lift, lower = _working(P)
    gens = [(name, lift(el)) for name, el in _sorted_generators(P)]
    if not gens:
        raise MissingGeneratorsError(f"{P.name} declares no generators")
    words = _WordLevels(Pw, gens, budget)
    wit_e = _SandwichWitnesses(Pw, lift(e), words, cap)
    wit_estar = _SandwichWitnesses(Pw, lift(estar), words, cap)

    def s_right(x):
        return P.sub(x, P.mul(x, ee))

    def mid_right(mid):
        def apply(w_el):
            base = mid if w_el is None else P.mul(mid, lower(w_el))
            return base
        return apply

    R2 = grading.parts[2]
    Rm2 = grading.parts[-2]
    R1 = grading.parts[1]
    Rm1 = grading.parts[-1]

    info = {"attempts": 0, "spans_ok": False}
    minus_items = plus_items = ()
    for attempt in range(retries + 1):
        info["attempts"] = attempt + 1
        wit_minus = []
        wit_plus = []
        for name, el in gens:
            _, terms_e = wit_e.decompose_upto(el, attempt, f"{name} over e")
            _, terms_s = wit_estar.decompose_upto(el, attempt, f"{name} over e*")
            wit_minus.extend((vl, v) for _, ul, u, vl, v in terms_e)
            wit_plus.extend((vl, v) for _, ul, u, vl, v in terms_s)

        apply_e = mid_right(e)
        apply_estar = mid_right(estar)
        minus_items = _brace_set(
            P, "e", wit_minus, lambda w: s_right(apply_e(w))
        )
        plus_items = _brace_set(
            P, "e*", wit_plus, lambda w: s_right(apply_estar(w))
        )

        span1 = SpanBuilder(P.field, P.dim)
        for _, m, _ in minus_items:
            for row in R2.basis:
                r = P.element(row)
                span1.add(P.mul(m, r).coords)
                span1.add(P.mul(r, m).coords)
        span_m1 = SpanBuilder(P.field, P.dim)
        for _, m, _ in plus_items:
            for row in Rm2.basis:
                r = P.element(row)
                span_m1.add(P.mul(m, r).coords)
                span_m1.add(P.mul(r, m).coords)
        ok = span1.subspace() == R1 and span_m1.subspace() == Rm1
        if ok:
            info["spans_ok"] = True
            break

    M_minus = generator_set("lie", minus_items)
    M_plus = generator_set("lie", plus_items)
    info["sizes"] = (len(minus_items), len(plus_items))
    info["odd_dims"] = (Rm1.rank, R1.rank)
    return M_minus, M_plus, info


def lemma5_certificate(P, grading=None, e=None, cap=6, budget=None):
    """Certificate form of the odd-component spanning equalities."""
    e = grading.e if grading is not None else _resolve_idempotent(P, e)
    hyp = hypotheses_for(P, e, ("involution", "e^2=e", "ee*=0", "e*e=0", "ReR=R"))
    if not all(hyp.values()):
        return _hypothesis_certificate(P, "lemma5", hyp)
    M_minus, M_plus, info = lemma5_sets(P, grading, e, cap=cap, budget=budget)
    merged = generator_set(
        "lie", tuple(M_minus.elements) + tuple(M_plus.elements)
    )
    return Certificate(
        claim="lemma5",
        verdict=PASS if info["spans_ok"] else FAIL,
        presentation=P,
        generators=merged,
        detail={
            "hypotheses": hyp,
            "sizes": info["sizes"],
            "odd_component_dims": info["odd_dims"],
            "attempts": info["attempts"],
        },
    )


# -- lemma6 ---------------------------------------------------------------


def lemma6_check(P, grading=None, e=None):
    """K_{±1} and K_{±2} lie inside [K,K], and K_{-1} + K_1 Lie-generates it."""
    e = grading.e if grading is not None else _resolve_idempotent(P, e)
    hyp = hypotheses_for(P, e, _THEOREM2_HYPS)
    if not all(hyp.values()):
        return _hypothesis_certificate(P, "lemma6", hyp)
    grading, kh = _graded_split(P, e, grading)
    target = derived_K_subspace(P)
    membership_ok = True
    for i in (-2, -1, 1, 2):
        Ki = kh.graded[i][0]
        for row in Ki.basis:
            if not target.contains(row):
                membership_ok = False
    items = []
    for i in (-1, 1):
        Ki = kh.graded[i][0]
        for k, row in enumerate(Ki.basis):
            items.append((f"K_{i}:{k}", P.element(row), f"K_{i}-basis"))
    gens = generator_set("lie", items)
    trace = lie_closure(P, gens)
    verdict = PASS if membership_ok and _final_equals(trace.final, target) else FAIL
    return Certificate(
        claim="lemma6",
        verdict=verdict,
        presentation=P,
        generators=gens,
        trace=trace,
        target=target,
        detail={
            "hypotheses": hyp,
            "membership_ok": membership_ok,
            "derived_K_rank": target.rank,
        },
    )


# -- theorem2 ---------------------------------------------------------------


def _alternating_products(P, outer, inner, r_max, budget):
    """Span-representative alternating products a b a ... a with <= r_max
    outer slots.

    Each level keeps only products that grew the span so far; every later
    use of these products is linear in the product, so replacing a level by
    span representatives leaves all generated subspaces unchanged.
    """
    reps = []
    seen = SpanBuilder(P.field, P.dim)
    count = 0
    level = []
    for lab, el in outer:
        count += 1
        if count > budget:
            raise BudgetExceededError(count, budget)
        if not P.is_zero(el) and seen.add(el.coords):
            reps.append((lab, el))
            level.append((lab, el))
    for _ in range(2, r_max + 1):
        nxt = []
        for lab, w in level:
            for blab, b in inner:
                wb = P.mul(w, b)
                if P.is_zero(wb):
                    continue
                for alab, a in outer:
                    count += 1
                    if count > budget:
                        raise BudgetExceededError(count, budget)
                    wba = P.mul(wb, a)
                    if P.is_zero(wba):
                        continue
                    if seen.add(wba.coords):
                        entry = (f"{lab}*{blab}*{alab}", wba)
                        reps.append(entry)
                        nxt.append(entry)
        level = nxt
        if not level:
            break
    return reps


def theorem2_certify(P, e=None, seed=0, cap=6, budget=None):
    """Pipeline certificate: [K,K] is finitely generated.

    Assembles the finite union set: the odd skew sets M_{±1}, brackets of
    braces of bounded alternating corner products, the circle-bracket
    elements coming from the squares decomposition of symmetrized products,
    and braces of M against the corner products; then compares the Lie
    closure of the union with [K,K].
    """
    _require_valid(P)
    e = _resolve_idempotent(P, e)
    hyp = hypotheses_for(P, e, _THEOREM2_FULL_HYPS)
    if not all(hyp.values()):
        return _hypothesis_certificate(P, "theorem2", hyp, seed=seed)
    budget_n = word_budget(budget)

    grading = z_grading(P, e)
    kh = kh_split(P, grading)
    estar = grading.estar

    stage = {"grading_dims": grading.dims(), "grading_multiplicative": grading.multiplicative}

    l4 = lemma4_check(P, grading)
    stage["lemma4"] = l4.verdict
    if l4.verdict != PASS:
        return Certificate(
            "theorem2", FAIL, P, detail={"hypotheses": hyp, "stages": stage,
                                         "failed_stage": "lemma4"}, seed=seed,
        )

    M_minus, M_plus, l5info = lemma5_sets(P, grading, cap=cap, budget=budget)
    stage["lemma5_spans_ok"] = l5info["spans_ok"]
    if not l5info["spans_ok"]:
        return Certificate(
            "theorem2", FAIL, P, detail={"hypotheses": hyp, "stages": stage,
                                         "failed_stage": "lemma5"}, seed=seed,
        )

    # Generators of the corner pair (R_{-2}, R_2), split into skew/symmetric
    # parts.
    pair_gens, pair_info = _lemma2_impl(P, e, estar, cap, budget)
    half = P.field.inv(P.field.coerce(2))
    split_sides = {"-": [], "+": []}
    for (label, el, _), side in zip(pair_gens.elements, pair_gens.sides):
        k_part = P.scale(half, P.brace(el))
        h_part = P.sub(el, k_part)
        for part, tag in ((k_part, "K"), (h_part, "H")):
            if not P.is_zero(part):
                split_sides[side].append((f"{tag}({label})", part))
    for side in ("-", "+"):
        seen = SpanBuilder(P.field, P.dim)
        split_sides[side] = [
            (lab, el) for lab, el in split_sides[side] if seen.add(el.coords)
        ]
    n = max(len(split_sides["-"]), len(split_sides["+"]), 1)
    stage["pair_generator_count"] = n

    P2 = _alternating_products(P, split_sides["+"], split_sides["-"], n + 2, budget_n)
    Pm2 = _alternating_products(P, split_sides["-"], split_sides["+"], n + 2, budget_n)
    stage["corner_product_counts"] = (len(Pm2), len(P2))

    union = []

    def push(label, el, prov):
        if not P.is_zero(el):
            union.append((f"u{len(union)}:{label}", el, prov))

    for lab, el, prov in M_minus.elements:
        push(lab, el, "M_-1")
    for lab, el, prov in M_plus.elements:
        push(lab, el, "M_1")

    braces = []
    seen_braces = SpanBuilder(P.field, P.dim)
    for lab, p in Pm2 + P2:
        br = P.brace(p)
        if not P.is_zero(br) and seen_braces.add(br.coords):
            braces.append((lab, br))
    for i, (lab1, b1) in enumerate(braces):
        for lab2, b2 in braces[i + 1:]:
            push(f"[{{{lab1}}},{{{lab2}}}]", P.commutator(b1, b2), "brace-bracket")

    # Squares decomposition p + p* = sum alpha k^2 with k in K_{±1}.
    solvers = {}
    families = {}
    for sigma in (1, -1):
        fam = _squares_family(P, kh.graded[sigma][0])
        families[sigma] = fam
        sol = CombinationSolver(P.field, P.dim)
        for k in fam:
            sol.add(P.mul(k, k).coords)
        solvers[sigma] = sol
    sym_parts = []  # (label, h = p + p*, witness ks)
    for source, sigma in ((P2, 1), (Pm2, -1)):
        for lab, p in source:
            h = P.add(p, P.involve(p))
            if P.is_zero(h):
                continue
            sol = solvers[sigma].solve(h.coords)
            ks = [families[sigma][i] for i in sorted(sol)] if sol else []
            sym_parts.append((lab, h, ks))
    for lab_q, _, ks in sym_parts:
        for k in ks:
            for lab_p, h_p, _ in sym_parts:
                push(
                    f"[({lab_p}+*)ok({lab_q}),k]",
                    P.commutator(P.circle(h_p, k), k),
                    "square-circle",
                )

    for lab_m, m, _ in M_minus.elements:
        for lab_p, p in P2:
            push(f"{{{lab_m}*{lab_p}}}", P.brace(P.mul(m, p)), "M_-1*P_2")
    for lab_m, m, _ in M_plus.elements:
        for lab_p, p in Pm2:
            push(f"{{{lab_m}*{lab_p}}}", P.brace(P.mul(m, p)), "M_1*P_-2")

    # Span-deduplicate the union; Lie closure only depends on the span.
    seen_union = SpanBuilder(P.field, P.dim)
    union = [(lab, el, prov) for lab, el, prov in union if seen_union.add(el.coords)]
    gens = generator_set("lie", union)
    trace = lie_closure(P, gens)
    target = derived_K_subspace(P)
    stage["union_size"] = len(union)
    return Certificate(
        claim="theorem2",
        verdict=_verdict(trace.final, target),
        presentation=P,
        generators=gens,
        trace=trace,
        target=target,
        detail={
            "hypotheses": hyp,
            "stages": stage,
            "derived_K_rank": target.rank,
            "d": pair_info["d"],
        },
        seed=seed,
    )


# -- lemma7 ---------------------------------------------------------------


def lemma7_reduction_check(P, grading=None, e=None, n_bound=2, trials=12, seed=0):
    """Alternating corner products with a repeated middle factor reduce.

    For random a's in K_2 ∪ H_2 and b's in K_{-2} ∪ H_{-2} with fewer than n
    distinct b's, the product a1 b1 ... bn a_{n+1} must lie in the span of
    shorter alternating products times (K_{-2}K_2 + H_{-2}H_2).
    """
    if n_bound < 2:
        raise ValueError("n_bound must be >= 2")
    e = grading.e if grading is not None else _resolve_idempotent(P, e)
    hyp = hypotheses_for(P, e, ("involution", "e^2=e", "ee*=0", "e*e=0"))
    if not all(hyp.values()):
        return _hypothesis_certificate(P, "lemma7", hyp, seed=seed)
    grading, kh = _graded_split(P, e, grading)
    K2, H2 = kh.graded[2]
    Km2, Hm2 = kh.graded[-2]

    D = SpanBuilder(P.field, P.dim)
    for left, right in ((Km2, K2), (Hm2, H2)):
        for u in left.basis:
            for v in right.basis:
                D.add(P.mul(P.element(u), P.element(v)).coords)
    D_rows = [P.element(r) for r in D.subspace().basis]

    rng = random.Random(seed)
    n = n_bound

    def sample_from(parts):
        pools = [s for s in parts if s.rank > 0]
        if not pools:
            return P.zero()
        return random_element(P, rng, rng.choice(pools))

    def rhs_span(a_pool, b_pool):
        span = SpanBuilder(P.field, P.dim)
        words = [[a] for a in a_pool]
        for r in range(0, n):
            if r > 0:
                words = [w + [b, a] for w in words for b in b_pool for a in a_pool]
            for w in words:
                el = w[0]
                for x in w[1:]:
                    el = P.mul(el, x)
                for d in D_rows:
                    span.add(P.mul(el, d).coords)
        return span

    checked = 0
    failures = []
    for t in range(trials):
        a_pool = [sample_from((K2, H2)) for _ in range(n + 1)]
        distinct = [sample_from((Km2, Hm2)) for _ in range(n - 1)]
        b_pool = list(distinct)
        b_pool.insert(rng.randrange(n), distinct[rng.randrange(len(distinct))])
        w = a_pool[0]
        for i in range(n):
            w = P.mul(P.mul(w, b_pool[i]), a_pool[i + 1])
        checked += 1
        if P.is_zero(w):
            continue  # zero lies in every span
        span = rhs_span(a_pool, b_pool)
        if not span.contains(w.coords):
            failures.append(t)
    verdict = PASS if not failures else FAIL
    return Certificate(
        claim="lemma7",
        verdict=verdict,
        presentation=P,
        detail={
            "hypotheses": hyp,
            "n": n,
            "trials": checked,
            "failed_trials": failures,
            "corner_dims": {
                "K_-2": Km2.rank, "H_-2": Hm2.rank, "K_2": K2.rank, "H_2": H2.rank,
            },
        },
        seed=seed,
    )


# -- simple/semiprime instance checks ----------------------------------------


def lemma8_check(P, e=None):
    """For a desk-simple involutive algebra with e + e* = 1, the corner skew
    parts K_{-2} + K_2 generate R as an associative algebra."""
    e = _resolve_idempotent(P, e)
    hyp = hypotheses_for(
        P, e, ("involution", "e^2=e", "ee*=0", "e*e=0", "e+e*=1", "simple(desk-scale)")
    )
    if not all(hyp.values()):
        return _hypothesis_certificate(P, "lemma8", hyp)
    grading, kh = _graded_split(P, e)
    items = []
    for i in (-2, 2):
        Ki = kh.graded[i][0]
        for k, row in enumerate(Ki.basis):
            items.append((f"K_{i}:{k}", P.element(row), f"K_{i}-basis"))
    gens = generator_set("associative", items)
    trace = assoc_closure(P, gens)
    target = P.span_of([P.basis_element(i) for i in range(P.dim)])
    return Certificate(
        claim="lemma8",
        verdict=_verdict(trace.final, target),
        presentation=P,
        generators=gens,
        trace=trace,
        target=target,
        detail={"hypotheses": hyp, "corner_skew_dims": (kh.graded[-2][0].rank, kh.graded[2][0].rank)},
    )


def lemma9_check(P, samples=20, seed=0):
    """In a desk-semiprime involutive algebra, k K k = 0 forces k = 0.

    Checked contrapositively: k K k is nonzero for every nonzero skew basis
    vector and for sampled random nonzero skew elements.
    """
    hyp = {"involution": P.has_involution}
    if not P.has_involution:
        return _hypothesis_certificate(P, "lemma9", hyp, seed=seed)
    ok, witness = _desk_semiprime(P)
    hyp["semiprime(desk-scale)"] = ok
    if not ok:
        # Illustrate the failure: a nonzero skew element annihilated by K.
        kh = kh_split(P)
        K_rows = [P.element(r) for r in kh.K.basis]
        demo = None
        for k in K_rows:
            if not P.is_zero(k) and all(
                P.is_zero(P.triple(k, x, k)) for x in K_rows
            ):
                demo = P.render(k)
                break
        extra = {
            "square-zero-ideal-witness": witness,
            "skew-annihilator-witness": demo,
        }
        return _hypothesis_certificate(P, "lemma9", hyp, seed=seed, extra=extra)

    kh = kh_split(P)
    K_rows = [P.element(r) for r in kh.K.basis]
    rng = random.Random(seed)

    def k_K_k_nonzero(k):
        return any(not P.is_zero(P.triple(k, x, k)) for x in K_rows)

    failures = []
    for i, k in enumerate(K_rows):
        if not P.is_zero(k) and not k_K_k_nonzero(k):
            failures.append(f"basis:{i}")
    checked = len(K_rows)
    if kh.K.rank > 0:
        for t in range(samples):
            k = random_element(P, rng, kh.K, nonzero=True)
            checked += 1
            if not k_K_k_nonzero(k):
                failures.append(f"sample:{t}")
    return Certificate(
        claim="lemma9",
        verdict=PASS if not failures else FAIL,
        presentation=P,
        detail={
            "hypotheses": hyp,
            "K_rank": kh.K.rank,
            "checked": checked,
            "failures": failures,
        },
        seed=seed,
    )


# -- stagnation probe ---------------------------------------------------------


def stagnation_probe(P, target, trials=50, max_gen=5, seed=0):
    """Randomized refutation: bounded generator sets drawn inside ``target``
    never Lie-generate it.

    The target must be bracket-closed. Reports per-trial closure ranks and
    whether every trial stagnated strictly below the target rank; also
    records whether the target is bracket-abelian, in which case any g
    generators span at most rank g.
    """
    rows = [P.element(r) for r in target.basis]
    abelian = True
    for i, u in enumerate(rows):
        for v in rows[i:]:
            w = P.commutator(u, v)
            if not P.is_zero(w):
                abelian = False
                if not target.contains(w.coords):
                    raise ValueError("stagnation target is not bracket-closed")
    rng = random.Random(seed)
    results = []
    reached = 0
    max_rank = 0
    for t in range(trials):
        g = rng.randint(1, max_gen)
        items = []
        for i in range(g):
            el = random_element(P, rng, target, nonzero=target.rank > 0)
            items.append((f"t{t}g{i}", el, "random"))
        trace = lie_closure(P, generator_set("lie", items))
        rank = trace.final_rank
        max_rank = max(max_rank, rank)
        hit = rank == target.rank
        reached += hit
        results.append({"trial": t, "size": g, "rank": rank, "reached": hit})
    verdict = PASS if reached == 0 else FAIL
    return Certificate(
        claim="stagnation",
        verdict=verdict,
        presentation=P,
        target=target,
        detail={
            "trials": trials,
            "max_gen": max_gen,
            "target_rank": target.rank,
            "max_rank_achieved": max_rank,
            "reached_target_count": reached,
            "bracket_abelian": abelian,
            "results": results,
        },
        seed=seed,
    )

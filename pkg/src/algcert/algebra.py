"""Structure-constant presentations of associative algebras with involution.

An :class:`AlgebraPresentation` fixes a basis b_0..b_{dim-1}, a sparse
multiplication table b_i * b_j = sum_k c_ijk b_k, an optional involution
given as a linear map on basis elements, named idempotents, named algebra
generators, and an optional unit. Elements are dense exact coordinate
vectors over that basis.

The presentation is treated as immutable once built; every operation is a
pure function of its inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    DimensionError,
    FormatError,
    MissingInvolutionError,
    UnitalityError,
)
from .linalg import SpanBuilder, echelonize


@dataclass(frozen=True)
class Element:
    """Exact coordinate vector over a presentation's basis."""

    coords: tuple

    def __len__(self):
        return len(self.coords)


class AlgebraPresentation:
    def __init__(
        self,
        name,
        field,
        basis_labels,
        mul,
        involution=None,
        idempotents=None,
        generators=None,
        unital=False,
        unit=None,
    ):
        self.name = str(name)
        self.field = field
        self.basis_labels = tuple(str(s) for s in basis_labels)
        self.dim = len(self.basis_labels)
        if self.dim < 1:
            raise FormatError("presentation needs at least one basis element")
        if len(set(self.basis_labels)) != self.dim:
            raise FormatError("basis labels must be unique")
        self._mul = self._normalize_mul(mul)
        self._star = self._normalize_involution(involution)
        self.idempotents = {
            str(k): self.element(v) for k, v in dict(idempotents or {}).items()
        }
        self.generators = {
            str(k): self.element(v) for k, v in dict(generators or {}).items()
        }
        self.unital = bool(unital)
        if self.unital:
            if unit is None:
                raise FormatError("unital presentation must declare its unit")
            self.unit = self.element(unit)
        else:
            if unit is not None:
                raise FormatError("non-unital presentation must not declare a unit")
            self.unit = None
        self._basis_cache = None
        self._half = field.inv(field.coerce(2))

    # -- construction helpers -------------------------------------------

    def _normalize_mul(self, mul):
        F = self.field
        table = {}
        if hasattr(mul, "items"):
            items = []
            for (i, j), entries in mul.items():
                for k, c in entries:
                    items.append((i, j, k, c))
        else:
            items = [tuple(row) for row in mul]
        seen = set()
        for row in items:
            if len(row) != 4:
                raise FormatError(f"mul entry must be [i, j, k, scalar]: {row!r}")
            i, j, k, c = row
            for idx in (i, j, k):
                if not isinstance(idx, int) or not 0 <= idx < self.dim:
                    raise FormatError(f"mul index out of range: {row!r}")
            if (i, j, k) in seen:
                raise FormatError(f"duplicate mul entry for ({i},{j},{k})")
            seen.add((i, j, k))
            c = c if not isinstance(c, str) else F.parse(c)
            c = F.coerce(c)
            if not c:
                continue
            table.setdefault((i, j), []).append((k, c))
        return {
            key: tuple(sorted(entries)) for key, entries in table.items()
        }

    def _normalize_involution(self, involution):
        if involution is None:
            return None
        F = self.field
        rows = [[] for _ in range(self.dim)]
        seen = set()
        for row in involution:
            if len(row) != 3:
                raise FormatError(f"involution entry must be [i, j, scalar]: {row!r}")
            i, j, c = row
            for idx in (i, j):
                if not isinstance(idx, int) or not 0 <= idx < self.dim:
                    raise FormatError(f"involution index out of range: {row!r}")
            if (i, j) in seen:
                raise FormatError(f"duplicate involution entry for ({i},{j})")
            seen.add((i, j))
            c = c if not isinstance(c, str) else F.parse(c)
            c = F.coerce(c)
            if not c:
                continue
            rows[i].append((j, c))
        return tuple(tuple(sorted(r)) for r in rows)

    # -- element helpers -------------------------------------------------

    def element(self, coords):
        """Coerce a sequence of scalars / ints / scalar strings to an Element."""
        if isinstance(coords, Element):
            coords = coords.coords
        coords = list(coords)
        if len(coords) != self.dim:
            raise DimensionError(
                f"element has {len(coords)} coords, expected {self.dim}"
            )
        F = self.field
        out = []
        for x in coords:
            if isinstance(x, str):
                out.append(F.parse(x))
            else:
                out.append(F.coerce(x))
        return Element(tuple(out))

    def zero(self):
        return Element((self.field.zero,) * self.dim)

    def basis_element(self, i):
        if self._basis_cache is None:
            F = self.field
            cache = []
            for k in range(self.dim):
                coords = [F.zero] * self.dim
                coords[k] = F.one
                cache.append(Element(tuple(coords)))
            self._basis_cache = cache
        return self._basis_cache[i]

    def is_zero(self, a):
        return not any(a.coords)

    def equal(self, a, b):
        return a.coords == b.coords

    def add(self, a, b):
        F = self.field
        return Element(tuple(F.add(x, y) for x, y in zip(a.coords, b.coords)))

    def sub(self, a, b):
        F = self.field
        return Element(tuple(F.sub(x, y) for x, y in zip(a.coords, b.coords)))

    def neg(self, a):
        F = self.field
        return Element(tuple(F.neg(x) for x in a.coords))

    def scale(self, c, a):
        F = self.field
        c = F.coerce(c)
        return Element(tuple(F.mul(c, x) for x in a.coords))

    # -- products ---------------------------------------------------------

    def mul(self, a, b):
        """Bilinear extension of the structure constants."""
        if len(a.coords) != self.dim or len(b.coords) != self.dim:
            raise DimensionError("element dimension mismatch")
        F = self.field
        acc = [F.zero] * self.dim
        table = self._mul
        for i, ca in enumerate(a.coords):
            if not ca:
                continue
            for j, cb in enumerate(b.coords):
                if not cb:
                    continue
                entries = table.get((i, j))
                if not entries:
                    continue
                cab = F.mul(ca, cb)
                for k, c in entries:
                    acc[k] = F.add(acc[k], F.mul(cab, c))
        return Element(tuple(acc))

    def mul_basis(self, i, j):
        """Product of two basis elements, as an Element."""
        F = self.field
        acc = [F.zero] * self.dim
        for k, c in self._mul.get((i, j), ()):
            acc[k] = c
        return Element(tuple(acc))

    @property
    def has_involution(self):
        return self._star is not None

    def involve(self, a):
        if self._star is None:
            raise MissingInvolutionError(f"{self.name} has no involution")
        F = self.field
        acc = [F.zero] * self.dim
        for i, ci in enumerate(a.coords):
            if not ci:
                continue
            for j, sij in self._star[i]:
                acc[j] = F.add(acc[j], F.mul(ci, sij))
        return Element(tuple(acc))

    def commutator(self, a, b):
        return self.sub(self.mul(a, b), self.mul(b, a))

    def circle(self, a, b):
        half = self._half
        s = self.add(self.mul(a, b), self.mul(b, a))
        return self.scale(half, s)

    def triple(self, a, b, c):
        """Associative triple product a*b*c."""
        return self.mul(self.mul(a, b), c)

    def jordan_triple(self, a, b, c):
        """Symmetrized triple product a*b*c + c*b*a."""
        return self.add(self.triple(a, b, c), self.triple(c, b, a))

    def brace(self, a):
        """a - a*, the skew part scaled by 2."""
        return self.sub(a, self.involve(a))

    # -- rendering ---------------------------------------------------------

    def render(self, a):
        """Human-readable linear combination over the basis labels."""
        F = self.field
        terms = []
        for i, c in enumerate(a.coords):
            if not c:
                continue
            label = self.basis_labels[i]
            s = F.format(c)
            if s == "1":
                terms.append(("+", label))
            elif s == "-1":
                terms.append(("-", label))
            elif s.startswith("-"):
                terms.append(("-", f"{s[1:]}*{label}"))
            else:
                terms.append(("+", f"{s}*{label}"))
        if not terms:
            return "0"
        sign, first = terms[0]
        out = first if sign == "+" else "-" + first
        for sign, t in terms[1:]:
            out += f" {sign} {t}"
        return out

    def span_of(self, elements):
        return echelonize(self.field, [e.coords for e in elements], self.dim)

    def __repr__(self):
        return f"AlgebraPresentation({self.name!r}, dim={self.dim})"


def unital_hull(P):
    """Adjoin a unit as a new last basis element; the input embeds as an ideal."""
    if P.unital:
        raise UnitalityError(f"{P.name} is already unital")
    F = P.field
    dim = P.dim
    label = "1" if "1" not in P.basis_labels else "@unit"
    mul = []
    for (i, j), entries in sorted(P._mul.items()):
        for k, c in entries:
            mul.append((i, j, k, c))
    for i in range(dim):
        mul.append((i, dim, i, F.one))
        mul.append((dim, i, i, F.one))
    mul.append((dim, dim, dim, F.one))
    involution = None
    if P.has_involution:
        involution = []
        for i, row in enumerate(P._star):
            for j, c in row:
                involution.append((i, j, c))
        involution.append((dim, dim, F.one))
    embed = lambda el: tuple(el.coords) + (F.zero,)
    return AlgebraPresentation(
        name=P.name + "+1",
        field=F,
        basis_labels=P.basis_labels + (label,),
        mul=mul,
        involution=involution,
        idempotents={k: embed(v) for k, v in P.idempotents.items()},
        generators={k: embed(v) for k, v in P.generators.items()},
        unital=True,
        unit=(F.zero,) * dim + (F.one,),
    )


def embed_in_hull(H, el):
    """Lift an element of the original algebra into its hull H."""
    return H.element(tuple(el.coords) + (H.field.zero,))


def restrict_from_hull(P, el):
    """Drop the unit coordinate of a hull element that lies in the ideal."""
    if el.coords[-1]:
        raise DimensionError("element does not lie in the embedded algebra")
    return P.element(el.coords[:-1])


def ideal_span(P, x, unit_coeff=0):
    """Span of all products b_i * (unit_coeff + x) * b_j, saturated on both sides.

    With unit_coeff=0 this is the two-sided product space R x R; unit_coeff=1
    gives R(1+x)R, which is how complements like 1-e are handled without
    leaving the algebra.
    """
    F = P.field
    b = SpanBuilder(F, P.dim)
    frontier = []
    coeff = F.coerce(unit_coeff)
    for i in range(P.dim):
        left = P.mul(P.basis_element(i), x)
        for j in range(P.dim):
            w = P.mul(left, P.basis_element(j))
            if coeff:
                w = P.add(w, P.scale(coeff, P.mul_basis(i, j)))
            if b.add(w.coords):
                frontier.append(w)
    # Saturate: a product space of this shape is already a two-sided ideal,
    # but the fixed point is confirmed rather than assumed.
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


@dataclass(frozen=True)
class Violation:
    axiom: str
    indices: tuple
    message: str


@dataclass
class ValidationReport:
    violations: list
    hypotheses: dict

    @property
    def ok(self):
        return not self.violations


def validate_presentation(P):
    """Check the algebra axioms and report the generation hypotheses.

    Axiom violations (associativity, involution laws, idempotency, unit law)
    are returned as data. For every declared idempotent e the report also
    records whether ReR = R, R(1-e)R = R and, when an involution is present,
    whether ee* = e*e = 0 and R(1-e-e*)R = R, each computed by two-sided
    ideal saturation.
    """
    violations = []
    F = P.field
    dim = P.dim

    # Associativity via sparse convolution of the structure constants:
    # (b_i b_j) b_k and b_i (b_j b_k) expand to coefficient dicts keyed by
    # (i, j, k, l); comparing the dicts avoids dim^3 dense products.
    table = P._mul
    left = {}
    for (i, j), entries in table.items():
        for m, c1 in entries:
            for k in range(dim):
                for l, c2 in table.get((m, k), ()):
                    key = (i, j, k, l)
                    acc = F.add(left.get(key, F.zero), F.mul(c1, c2))
                    if acc:
                        left[key] = acc
                    else:
                        left.pop(key, None)
    right = {}
    for (j, k), entries in table.items():
        for m, c1 in entries:
            for i in range(dim):
                for l, c2 in table.get((i, m), ()):
                    key = (i, j, k, l)
                    acc = F.add(right.get(key, F.zero), F.mul(c1, c2))
                    if acc:
                        right[key] = acc
                    else:
                        right.pop(key, None)
    bad_triples = sorted(
        {
            key[:3]
            for key in set(left) | set(right)
            if left.get(key, F.zero) != right.get(key, F.zero)
        }
    )
    for i, j, k in bad_triples:
        violations.append(
            Violation(
                "associativity",
                (i, j, k),
                f"(b{i}*b{j})*b{k} != b{i}*(b{j}*b{k})",
            )
        )

    if P.has_involution:
        for i in range(dim):
            twice = P.involve(P.involve(P.basis_element(i)))
            if twice.coords != P.basis_element(i).coords:
                violations.append(
                    Violation("involution-order2", (i,), f"b{i}** != b{i}")
                )
        for i in range(dim):
            for j in range(dim):
                lhs = P.involve(P.mul_basis(i, j))
                rhs = P.mul(
                    P.involve(P.basis_element(j)), P.involve(P.basis_element(i))
                )
                if lhs.coords != rhs.coords:
                    violations.append(
                        Violation(
                            "involution-antiautomorphism",
                            (i, j),
                            f"(b{i}*b{j})* != b{j}* * b{i}*",
                        )
                    )

    if P.unital:
        for i in range(dim):
            b_i = P.basis_element(i)
            if (
                P.mul(P.unit, b_i).coords != b_i.coords
                or P.mul(b_i, P.unit).coords != b_i.coords
            ):
                violations.append(
                    Violation("unit", (i,), f"declared unit does not fix b{i}")
                )

    hypotheses = {}
    for name in sorted(P.idempotents):
        e = P.idempotents[name]
        h = {}
        h["e^2=e"] = P.equal(P.mul(e, e), e)
        if not h["e^2=e"]:
            violations.append(
                Violation("idempotent", (name,), f"{name}^2 != {name}")
            )
        h["ReR=R"] = ideal_span(P, e).is_full
        h["R(1-e)R=R"] = ideal_span(P, P.neg(e), unit_coeff=1).is_full
        if P.has_involution:
            estar = P.involve(e)
            h["ee*=0"] = P.is_zero(P.mul(e, estar))
            h["e*e=0"] = P.is_zero(P.mul(estar, e))
            s_neg = P.neg(P.add(e, estar))
            h["R(1-e-e*)R=R"] = ideal_span(P, s_neg, unit_coeff=1).is_full
            if P.unital:
                s = P.add(P.unit, s_neg)
                h["s!=0"] = not P.is_zero(s)
            else:
                h["s!=0"] = True  # the hull unit keeps 1-e-e* nonzero
        hypotheses[name] = h

    return ValidationReport(violations, hypotheses)

"""Exact rational group algebra of the colored permutation groups.

Elements are sparse formal sums of group elements with Fraction (or int)
coefficients.  The module builds the descent-number class sums C_0..C_n,
the run-composition class sums, checks whether products of class sums stay
in the span of a partition's class sums, and constructs the orthogonal
idempotents that arise from expanding the structure polynomial

    phi(x) = sum_pi C(x + n - des(pi), n) pi

at the substitution x -> (x - 1)/r.  Binomials with rational argument are
falling factorials divided by n!, the unique polynomial extension.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .group import (
    ColoredLetter,
    ColoredPermutation,
    SizeCapExceeded,
    Word,
    _compose_words,
    _inverse_word,
    descent_positions,
    enumerate_group,
    identity,
    mr_key,
    word_des,
    word_str,
)

# Exact rational scalars; stdlib Fraction already keeps gcd-reduced
# numerator over positive denominator.
Rational = Fraction

Scalar = Union[int, Fraction]

DEFAULT_MAX_PAIRS = 20_000_000


def _require_exact(q: Scalar) -> Scalar:
    if not isinstance(q, (int, Fraction)):
        raise TypeError(f"exact arithmetic only; got {type(q).__name__}")
    return q


def rational_binom(y: Scalar, n: int) -> Fraction:
    """Falling factorial y(y-1)...(y-n+1)/n! over exact rationals."""
    _require_exact(y)
    out = Fraction(1)
    for m in range(n):
        out *= Fraction(y) - m
    return out / math.factorial(n)


@dataclass(frozen=True, eq=True)
class GroupAlgebraElement:
    """Sparse exact-rational formal sum of group elements.

    Keys of ``coeffs`` are one-line letter words; zero coefficients are
    never stored.  Instances are treated as immutable values.
    """

    r: int
    n: int
    coeffs: dict[Word, Scalar] = field(compare=True)

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "coeffs", {w: c for w, c in self.coeffs.items() if c != 0}
        )

    def coefficient(self, pi: Union[ColoredPermutation, Word]) -> Scalar:
        key = pi.letters if isinstance(pi, ColoredPermutation) else tuple(pi)
        return self.coeffs.get(key, 0)

    def terms(self) -> list[tuple[Word, Scalar]]:
        """Support sorted in canonical group order."""

        def key(w: Word) -> tuple:
            return (tuple(x[1] for x in w), tuple(x[0] for x in w))

        return sorted(self.coeffs.items(), key=lambda item: key(item[0]))

    def support_size(self) -> int:
        return len(self.coeffs)

    def __add__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        return algebra_add(self, other)

    def __mul__(self, other) -> "GroupAlgebraElement":
        if isinstance(other, GroupAlgebraElement):
            return algebra_multiply(self, other)
        return algebra_scale(self, other)

    def __rmul__(self, other) -> "GroupAlgebraElement":
        return algebra_scale(self, other)

    def __str__(self) -> str:
        parts = [f"({c})[{word_str(w)}]" for w, c in self.terms()]
        return " + ".join(parts) if parts else "0"


def algebra_zero(r: int, n: int) -> GroupAlgebraElement:
    return GroupAlgebraElement(r, n, {})


def algebra_unit(r: int, n: int) -> GroupAlgebraElement:
    return delta(identity(r, n))


def delta(pi: ColoredPermutation) -> GroupAlgebraElement:
    return GroupAlgebraElement(pi.r, pi.n, {pi.letters: 1})


def _check_same_group(a: GroupAlgebraElement, b: GroupAlgebraElement) -> None:
    if (a.r, a.n) != (b.r, b.n):
        raise ValueError("elements live in different group algebras")


def algebra_add(a: GroupAlgebraElement, b: GroupAlgebraElement) -> GroupAlgebraElement:
    _check_same_group(a, b)
    coeffs = dict(a.coeffs)
    for w, c in b.coeffs.items():
        coeffs[w] = coeffs.get(w, 0) + c
    return GroupAlgebraElement(a.r, a.n, coeffs)


def algebra_scale(a: GroupAlgebraElement, q: Scalar) -> GroupAlgebraElement:
    _require_exact(q)
    return GroupAlgebraElement(a.r, a.n, {w: q * c for w, c in a.coeffs.items()})


def algebra_multiply(
    a: GroupAlgebraElement,
    b: GroupAlgebraElement,
    max_pairs: int = DEFAULT_MAX_PAIRS,
) -> GroupAlgebraElement:
    """Convolution product: coefficient of pi is sum over st = pi of a[s] b[t]."""
    _check_same_group(a, b)
    if a.support_size() * b.support_size() > max_pairs:
        raise SizeCapExceeded(
            f"product support {a.support_size()}x{b.support_size()} exceeds cap"
        )
    r = a.r
    coeffs: dict[Word, Scalar] = {}
    for ws, cs in a.coeffs.items():
        for wt, ct in b.coeffs.items():
            w = _compose_words(r, ws, wt)
            coeffs[w] = coeffs.get(w, 0) + cs * ct
    return GroupAlgebraElement(a.r, a.n, coeffs)


@dataclass(frozen=True)
class ClassInfo:
    index: int
    label: object
    members: tuple[Word, ...]

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def representative(self) -> Word:
        return self.members[0]


@dataclass(frozen=True)
class ClassPartition:
    """A set partition of the group with stable class indexing.

    Blocks are nonempty and sorted by label; ``order`` lists the whole
    group in canonical enumeration order.
    """

    r: int
    n: int
    kind: str
    classes: tuple[ClassInfo, ...]
    labels: dict[Word, int] = field(compare=False)
    order: tuple[Word, ...] = field(compare=False)

    def label_of(self, w: Word) -> object:
        return self.classes[self.labels[w]].label

    def class_sums(self) -> list[GroupAlgebraElement]:
        return [
            GroupAlgebraElement(self.r, self.n, {w: 1 for w in info.members})
            for info in self.classes
        ]


def partition_by(
    r: int,
    n: int,
    kind: str,
    label_fn,
    max_size: int = 10_000_000,
    label_sort_key=None,
) -> ClassPartition:
    order = tuple(pi.letters for pi in enumerate_group(r, n, max_size))
    by_label: dict[object, list[Word]] = {}
    for w in order:
        by_label.setdefault(label_fn(w), []).append(w)
    sorted_labels = sorted(by_label, key=label_sort_key or (lambda x: x))
    classes = tuple(
        ClassInfo(i, label, tuple(by_label[label]))
        for i, label in enumerate(sorted_labels)
    )
    labels = {w: info.index for info in classes for w in info.members}
    return ClassPartition(r, n, kind, classes, labels, order)


def des_partition(r: int, n: int, max_size: int = 10_000_000) -> ClassPartition:
    return partition_by(r, n, "des", word_des, max_size)


def class_sums_des(
    r: int, n: int, max_size: int = 10_000_000
) -> tuple[ClassPartition, list[GroupAlgebraElement]]:
    """The partition by descent number and the sums C_0..C_n.

    Unrealized descent numbers (only possible at r = 1) yield the zero
    element, so the list always has n + 1 entries.
    """
    partition = des_partition(r, n, max_size)
    by_des = {info.label: info for info in partition.classes}
    sums = []
    for d in range(n + 1):
        info = by_des.get(d)
        members = info.members if info else ()
        sums.append(GroupAlgebraElement(r, n, {w: 1 for w in members}))
    return partition, sums


def mr_partition(r: int, n: int, max_size: int = 10_000_000) -> ClassPartition:
    def label(w: Word) -> tuple:
        return mr_key(ColoredPermutation(r, w)).parts

    return partition_by(r, n, "mr", label, max_size)


def class_sums_mr(
    r: int, n: int, max_size: int = 10_000_000
) -> tuple[ClassPartition, list[GroupAlgebraElement]]:
    """One class sum per realized run composition, in label order."""
    partition = mr_partition(r, n, max_size)
    return partition, partition.class_sums()


def desset_partition(r: int, n: int, max_size: int = 10_000_000) -> ClassPartition:
    def label(w: Word) -> tuple:
        return tuple(sorted(descent_positions(w)))

    return partition_by(r, n, "desset", label, max_size)


def variant_partition(
    r: int, n: int, a: int, b: int, max_size: int = 10_000_000
) -> ClassPartition:
    """Partition by the descent count read with boundary letters 0_a, 0_b."""
    lo, hi = ColoredLetter(a, 0), ColoredLetter(b, 0)

    def label(w: Word) -> int:
        padded = (lo,) + w + (hi,)
        return sum(padded[i] > padded[i + 1] for i in range(len(w) + 1))

    return partition_by(r, n, f"desvar({a},{b})", label, max_size)


@dataclass(frozen=True)
class SpanCheck:
    """Result of testing membership in the span of a partition's class sums."""

    vector: Optional[tuple[Scalar, ...]]
    witness: Optional[tuple[Word, Word, Scalar, Scalar]]

    @property
    def in_span(self) -> bool:
        return self.vector is not None


def is_in_span(a: GroupAlgebraElement, partition: ClassPartition) -> SpanCheck:
    """Per-class coefficient vector if a is constant on every class.

    Otherwise returns the first witness pair (two members of one class
    carrying different coefficients).
    """
    if (a.r, a.n) != (partition.r, partition.n):
        raise ValueError("element and partition live on different groups")
    vector = []
    for info in partition.classes:
        ref = a.coeffs.get(info.representative, 0)
        for w in info.members[1:]:
            c = a.coeffs.get(w, 0)
            if c != ref:
                return SpanCheck(None, (info.representative, w, ref, c))
        vector.append(ref)
    return SpanCheck(tuple(vector), None)


@dataclass(frozen=True)
class ClosureFailure:
    left: int
    right: int
    witness: tuple[Word, Word, Scalar, Scalar]

    def to_json(self) -> dict:
        w1, w2, c1, c2 = self.witness
        return {
            "left_class": self.left,
            "right_class": self.right,
            "word1": word_str(w1),
            "word2": word_str(w2),
            "coeff1": str(c1),
            "coeff2": str(c2),
        }


@dataclass(frozen=True)
class ClosureReport:
    kind: str
    r: int
    n: int
    pairs_checked: int
    failures: tuple[ClosureFailure, ...]

    @property
    def passed(self) -> bool:
        return not self.failures


def verify_closure(
    partition: ClassPartition, max_pairs: int = DEFAULT_MAX_PAIRS
) -> ClosureReport:
    """Check every product of two class sums against the span of the sums.

    Convolves the whole group against itself once, bucketing coefficients
    by the class pair, then tests constancy on every class.
    """
    order = partition.order
    if len(order) ** 2 > max_pairs:
        raise SizeCapExceeded(f"{len(order)}^2 products exceed cap {max_pairs}")
    K = len(partition.classes)
    label = partition.labels
    r = partition.r
    buckets: list[list[dict[Word, int]]] = [
        [dict() for _ in range(K)] for _ in range(K)
    ]
    tlabels = [label[w] for w in order]
    for ws in order:
        row = buckets[label[ws]]
        for wt, k in zip(order, tlabels):
            out = []
            for pc, pv in wt:
                sc, sv = ws[pv - 1]
                out.append(((pc + sc) % r, sv))
            w = tuple(out)
            bucket = row[k]
            bucket[w] = bucket.get(w, 0) + 1

    failures = []
    for j in range(K):
        for k in range(K):
            bucket = buckets[j][k]
            for info in partition.classes:
                ref = bucket.get(info.representative, 0)
                for w in info.members[1:]:
                    c = bucket.get(w, 0)
                    if c != ref:
                        failures.append(
                            ClosureFailure(j, k, (info.representative, w, ref, c))
                        )
                        break
                else:
                    continue
                break
    return ClosureReport(
        partition.kind, partition.r, partition.n, K * K, tuple(failures)
    )


class VerificationFailedClosure(RuntimeError):
    """Structure constants requested for a partition that is not closed."""


def structure_constants(
    partition: ClassPartition,
    closure: Optional[ClosureReport] = None,
    max_pairs: int = DEFAULT_MAX_PAIRS,
) -> list[list[list[int]]]:
    """Integer tensor m with class_sum_j * class_sum_k = sum_i m[j][k][i] sum_i.

    Requires closure: pass a ClosureReport for the same partition, or let
    the function verify closure itself.  Computed from one representative
    per class: m[j][k][i] counts factorizations of the representative.
    """
    if closure is None:
        closure = verify_closure(partition, max_pairs)
    if (closure.kind, closure.r, closure.n) != (
        partition.kind,
        partition.r,
        partition.n,
    ):
        raise ValueError("closure report does not match the partition")
    if not closure.passed:
        raise VerificationFailedClosure(
            f"closure not established for {partition.kind} on "
            f"G({partition.r},{partition.n})"
        )
    K = len(partition.classes)
    r = partition.r
    label = partition.labels
    tensor = [[[0] * K for _ in range(K)] for _ in range(K)]
    inverses = {w: _inverse_word(r, w) for w in partition.order}
    for info in partition.classes:
        rep = info.representative
        for ws in partition.order:
            j = label[ws]
            wt = _compose_words(r, inverses[ws], rep)
            tensor[j][label[wt]][info.index] += 1
    return tensor


def collapse(element: GroupAlgebraElement, partition: ClassPartition) -> tuple:
    """Class coordinates of an element known to lie in the span."""
    check = is_in_span(element, partition)
    if not check.in_span:
        raise ValueError("element is not constant on the partition's classes")
    return check.vector


def collapsed_product(
    x: Sequence[Scalar], y: Sequence[Scalar], tensor: list[list[list[int]]]
) -> tuple:
    """Coordinates of the product of two span elements via the tensor."""
    K = len(tensor)
    out = [Fraction(0)] * K
    for j in range(K):
        if x[j] == 0:
            continue
        for k in range(K):
            if y[k] == 0:
                continue
            coeff = x[j] * y[k]
            row = tensor[j][k]
            for i in range(K):
                if row[i]:
                    out[i] += coeff * row[i]
    return tuple(out)


@dataclass(frozen=True)
class RationalPolynomial:
    """Dense univariate polynomial with exact rational coefficients."""

    coefficients: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        coeffs = [Fraction(c) for c in self.coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @classmethod
    def one(cls) -> "RationalPolynomial":
        return cls((Fraction(1),))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def coeff(self, i: int) -> Fraction:
        if 0 <= i < len(self.coefficients):
            return self.coefficients[i]
        return Fraction(0)

    def __add__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        size = max(len(self.coefficients), len(other.coefficients))
        return RationalPolynomial(
            tuple(self.coeff(i) + other.coeff(i) for i in range(size))
        )

    def __mul__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        out = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients))
        for i, a in enumerate(self.coefficients):
            for j, b in enumerate(other.coefficients):
                out[i + j] += a * b
        return RationalPolynomial(tuple(out))

    def scale(self, q: Scalar) -> "RationalPolynomial":
        return RationalPolynomial(tuple(q * c for c in self.coefficients))

    def __call__(self, x: Scalar) -> Fraction:
        out = Fraction(0)
        for c in reversed(self.coefficients):
            out = out * Fraction(x) + c
        return out


def structure_poly_eval(
    r: int, n: int, x: Scalar, max_size: int = 10_000_000
) -> GroupAlgebraElement:
    """phi(x): every group element weighted by C(x + n - des, n).

    Integer x >= 0 keeps integer coefficients; rational x uses the falling
    factorial extension.
    """
    by_des = _phi_class_coefficients(r, n, x)
    coeffs: dict[Word, Scalar] = {}
    for pi in enumerate_group(r, n, max_size):
        w = pi.letters
        coeffs[w] = by_des[word_des(w)]
    return GroupAlgebraElement(r, n, coeffs)


def _phi_class_coefficients(r: int, n: int, x: Scalar) -> list[Scalar]:
    _require_exact(x)
    if isinstance(x, int) and x >= 0:
        return [math.comb(x + n - d, n) if x + n - d >= n else 0 for d in range(n + 1)]
    return [rational_binom(Fraction(x) + n - d, n) for d in range(n + 1)]


def verify_phi_identity(
    r: int,
    n: int,
    pairs: Iterable[tuple[Scalar, Scalar]],
    max_size: int = 10_000_000,
) -> bool:
    """Whether phi(x) phi(y) = phi(r x y + x + y) for every supplied pair."""
    for x, y in pairs:
        left = algebra_multiply(
            structure_poly_eval(r, n, x, max_size),
            structure_poly_eval(r, n, y, max_size),
        )
        z = r * Fraction(x) * Fraction(y) + Fraction(x) + Fraction(y)
        if z.denominator == 1:
            z = int(z)
        if left != structure_poly_eval(r, n, z, max_size):
            return False
    return True


def idempotent_class_table(r: int, n: int) -> list[list[Fraction]]:
    """alpha[i][d]: coefficient of x^i in C((x-1)/r + n - d, n)."""
    polys = []
    for d in range(n + 1):
        p = RationalPolynomial.one()
        for m in range(n):
            p = p * RationalPolynomial((Fraction(-1, r) + n - d - m, Fraction(1, r)))
        polys.append(p.scale(Fraction(1, math.factorial(n))))
    return [[polys[d].coeff(i) for d in range(n + 1)] for i in range(n + 1)]


def eulerian_idempotents(
    r: int, n: int, max_size: int = 10_000_000
) -> list[GroupAlgebraElement]:
    """The n+1 orthogonal idempotents c_i = sum_d alpha[i][d] C_d."""
    table = idempotent_class_table(r, n)
    _, sums = class_sums_des(r, n, max_size)
    out = []
    for i in range(n + 1):
        element = algebra_zero(r, n)
        for d in range(n + 1):
            if table[i][d] != 0:
                element = algebra_add(element, algebra_scale(sums[d], table[i][d]))
        out.append(element)
    return out


def tensor_mass_check(
    tensor: list[list[list[int]]], sizes: Sequence[int]
) -> bool:
    """Counting factorizations two ways: sum_i m[j][k][i] |class i| = |j| |k|."""
    K = len(tensor)
    return all(
        sum(tensor[j][k][i] * sizes[i] for i in range(K)) == sizes[j] * sizes[k]
        for j in range(K)
        for k in range(K)
    )

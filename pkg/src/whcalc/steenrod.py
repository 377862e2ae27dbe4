"""Odd-primary mod-p Steenrod algebra engine.

Words are tuples of generator tokens read left to right: 0 stands for the
Bockstein b, a positive integer s stands for the power operation P^s.  A
word b^(e0) P^(s1) b^(e1) P^(s2) ... is admissible when s_i >= p*s_{i+1} +
e_i for every consecutive pair; the admissible monomials form an F_p-basis
of the algebra.  Degrees: |b| = 1, |P^s| = 2s(p-1).

Inadmissible length-2 and length-3 factors are rewritten with the
odd-primary Adem relations (with binomial coefficients taken mod p by
Lucas), applied at the leftmost violation until every term is admissible.
The relations are never trusted blindly: the module action on stunted
projective classes, where P^s(y^k) = C(k, s) y^(k+(p-1)s) and b(y^k) = 0,
provides an independent oracle, as does the generating-function dimension
count of the dual algebra.

All linear algebra is exact over F_p on dictionaries keyed by words.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .arith import OddPrime, binom_mod_p
from .errors import InconsistencyError, PreconditionError

Word = tuple[int, ...]

BETA: Word = (0,)


def word_degree(p: OddPrime, word: Word) -> int:
    return sum(1 if g == 0 else 2 * g * (p.p - 1) for g in word)


def is_admissible(p: OddPrime, word: Word) -> bool:
    """Whether the word is admissible: no repeated Bockstein and
    s_i >= p*s_{i+1} + eps_i for consecutive power operations."""
    prev = None
    eps = 0
    for g in word:
        if g == 0:
            if eps:
                return False
            eps = 1
        else:
            if prev is not None and prev < p.p * g + eps:
                return False
            prev = g
            eps = 0
    return True


@dataclass(frozen=True)
class AdmissibleMonomial:
    """A basis monomial, stored as its word; the unit is the empty word."""

    word: Word

    @property
    def epsilon_0(self) -> int:
        return 1 if self.word and self.word[0] == 0 else 0

    @property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        """The (s_i, eps_i) pairs after the leading Bockstein exponent."""
        out = []
        for g in self.word[self.epsilon_0:]:
            if g == 0:
                s, _ = out[-1]
                out[-1] = (s, 1)
            else:
                out.append((g, 0))
        return tuple(out)

    def degree(self, p: OddPrime) -> int:
        return word_degree(p, self.word)

    def __str__(self) -> str:
        if not self.word:
            return "1"
        return " ".join("b" if g == 0 else f"P{g}" for g in self.word)

    @classmethod
    def parse(cls, text: str) -> "AdmissibleMonomial":
        text = text.strip()
        if text == "1":
            return cls(())
        word = []
        for token in text.split():
            if token == "b":
                word.append(0)
            elif token.startswith("P") and token[1:].isdigit() and int(token[1:]) > 0:
                word.append(int(token[1:]))
            else:
                raise PreconditionError(f"bad monomial token {token!r}")
        return cls(tuple(word))


@dataclass(frozen=True)
class FpLinearCombo:
    """A homogeneous F_p-linear combination of admissible monomials,
    canonically ordered by word."""

    terms: tuple[tuple[AdmissibleMonomial, int], ...]

    @classmethod
    def from_word_dict(cls, p: OddPrime, d: dict[Word, int]) -> "FpLinearCombo":
        terms = tuple(
            (AdmissibleMonomial(w), c % p.p)
            for w, c in sorted(d.items())
            if c % p.p
        )
        degs = {word_degree(p, m.word) for m, _ in terms}
        if len(degs) > 1:
            raise PreconditionError("combination is not homogeneous")
        return cls(terms)

    def word_dict(self) -> dict[Word, int]:
        return {m.word: c for m, c in self.terms}

    def degree(self, p: OddPrime) -> int | None:
        if not self.terms:
            return None
        return self.terms[0][0].degree(p)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(
            (f"{c}*" if c != 1 else "") + str(m) for m, c in self.terms
        )


# ---------------------------------------------------------------------------
# Adem relations


@lru_cache(maxsize=None)
def _adem(pp: int, a: int, eps: int, b: int) -> tuple[tuple[Word, int], ...]:
    """Expansion of the inadmissible factor P^a P^b (eps=0, a < p*b) or
    P^a b P^b (eps=1, a <= p*b) as admissible words with coefficients."""
    p = OddPrime(pp)
    out: dict[Word, int] = {}

    def add(word: Word, coeff: int) -> None:
        coeff %= pp
        if coeff:
            out[word] = (out.get(word, 0) + coeff) % pp
            if not out[word]:
                del out[word]

    if eps == 0:
        for t in range(a // pp + 1):
            c = binom_mod_p(p, (pp - 1) * (b - t) - 1, a - pp * t)
            if c == 0:
                continue
            sign = -1 if (a + t) % 2 else 1
            word = (a + b,) if t == 0 else (a + b - t, t)
            add(word, sign * c)
    else:
        for t in range(a // pp + 1):
            c = binom_mod_p(p, (pp - 1) * (b - t), a - pp * t)
            if c:
                sign = -1 if (a + t) % 2 else 1
                word = (0, a + b) if t == 0 else (0, a + b - t, t)
                add(word, sign * c)
            if a - pp * t - 1 >= 0:
                c = binom_mod_p(p, (pp - 1) * (b - t) - 1, a - pp * t - 1)
                if c:
                    sign = 1 if (a + t) % 2 else -1
                    word = (a + b, 0) if t == 0 else (a + b - t, 0, t)
                    add(word, sign * c)
    return tuple(sorted(out.items()))


def _leftmost_violation(pp: int, word: Word) -> tuple[int, int, int, int] | None:
    """(position, a, eps, b) of the first inadmissible factor, or None.
    A repeated Bockstein is reported with b = -1 (the factor is zero)."""
    n = len(word)
    for i, g in enumerate(word):
        if g == 0:
            if i + 1 < n and word[i + 1] == 0:
                return (i, 0, 0, -1)
            continue
        if i + 1 < n and word[i + 1] > 0:
            if g < pp * word[i + 1]:
                return (i, g, 0, word[i + 1])
        elif i + 2 < n and word[i + 1] == 0 and word[i + 2] > 0:
            if g <= pp * word[i + 2]:
                return (i, g, 1, word[i + 2])
    return None


@lru_cache(maxsize=None)
def _nf(pp: int, word: Word) -> tuple[tuple[Word, int], ...]:
    """Admissible normal form of a raw word, as (word, coeff) pairs."""
    hit = _leftmost_violation(pp, word)
    if hit is None:
        return ((word, 1),)
    i, a, eps, b = hit
    if b < 0:
        return ()
    prefix, suffix = word[:i], word[i + 2 + eps:]
    acc: dict[Word, int] = {}
    for mid, c in _adem(pp, a, eps, b):
        for w2, c2 in _nf(pp, prefix + mid + suffix):
            key = w2
            acc[key] = (acc.get(key, 0) + c * c2) % pp
    return tuple(sorted((w, c) for w, c in acc.items() if c))


def adem_normalize(p: OddPrime, word) -> FpLinearCombo:
    """Expand a raw word (iterable of 0 = Bockstein, s > 0 = P^s) in the
    admissible basis.  Idempotent on admissible words."""
    word = tuple(word)
    for g in word:
        if g < 0:
            raise PreconditionError(f"bad generator token {g}")
    return FpLinearCombo.from_word_dict(p, dict(_nf(p.p, word)))


def _combo_product(p: OddPrime, left: Word, right: dict[Word, int]) -> dict[Word, int]:
    """Normal form of (admissible word) * (normalized combo)."""
    acc: dict[Word, int] = {}
    for w, c in right.items():
        for w2, c2 in _nf(p.p, left + w):
            acc[w2] = (acc.get(w2, 0) + c * c2) % p.p
    return {w: c for w, c in acc.items() if c}


# ---------------------------------------------------------------------------
# Bases and dimension oracles


def admissible_basis(p: OddPrime, max_degree: int) -> list[AdmissibleMonomial]:
    """All admissible monomials of degree <= max_degree, ordered by
    (degree, word)."""
    if max_degree < 0:
        raise PreconditionError(f"max_degree must be >= 0, got {max_degree}")
    pp = p.p
    unit_p = 2 * (pp - 1)

    def chains(budget: int, max_s: int):
        yield ()
        for s in range(1, min(max_s, budget // unit_p) + 1):
            base = unit_p * s
            for tail in chains(budget - base, s // pp):
                yield (s,) + tail
            if base + 1 <= budget:
                for tail in chains(budget - base - 1, (s - 1) // pp):
                    yield (s, 0) + tail

    words: list[Word] = []
    for chain in chains(max_degree, max_degree):
        words.append(chain)
    if max_degree >= 1:
        for chain in chains(max_degree - 1, max_degree):
            words.append((0,) + chain)
    words.sort(key=lambda w: (word_degree(p, w), w))
    return [AdmissibleMonomial(w) for w in words]


def milnor_dual_dims(
    p: OddPrime, max_degree: int, *, first_exterior: int = 0
) -> dict[int, int]:
    """Graded dimensions of the dual algebra by generating function:
    polynomial generators in degrees 2(p^i - 1) for i >= 1 tensor exterior
    generators in degrees 2p^i - 1 for i >= first_exterior.  With
    first_exterior = 0 this counts the whole algebra; first_exterior = 2
    counts the quotient dual to the subalgebra generated by the two bottom
    primitives.  Zero entries are omitted."""
    if max_degree < 0:
        raise PreconditionError(f"max_degree must be >= 0, got {max_degree}")
    coeffs = [0] * (max_degree + 1)
    coeffs[0] = 1
    i = 1
    while 2 * (p.p**i - 1) <= max_degree:
        d = 2 * (p.p**i - 1)
        for j in range(d, max_degree + 1):
            coeffs[j] += coeffs[j - d]
        i += 1
    i = first_exterior
    while 2 * p.p**i - 1 <= max_degree:
        d = 2 * p.p**i - 1
        for j in range(max_degree, d - 1, -1):
            coeffs[j] += coeffs[j - d]
        i += 1
    return {d: c for d, c in enumerate(coeffs) if c}


# ---------------------------------------------------------------------------
# Action on stunted projective classes


def act_word_on_projective(p: OddPrime, word: Word, k: int):
    """Right-to-left action of a raw word on y^k; None when it vanishes.
    P^s multiplies by C(k, s) and raises the exponent by (p-1)s; the
    Bockstein kills every y^k."""
    coeff = 1
    for g in reversed(word):
        if g == 0:
            return None
        c = binom_mod_p(p, k, g)
        if c == 0:
            return None
        coeff = coeff * c % p.p
        k += (p.p - 1) * g
    return coeff, k


def act_on_projective(
    p: OddPrime, mono: AdmissibleMonomial, a: int, suspensions: int = 0
):
    """Action of a monomial on the class y^a of the stunted projective
    spectrum with cells from complex degree a >= -1 up.  Returns
    (coefficient, target exponent) or None.  Suspensions shift degrees
    only; the operations commute with them, so the result is unchanged."""
    if a < -1:
        raise PreconditionError(f"projective classes need a >= -1, got {a}")
    del suspensions
    return act_word_on_projective(p, mono.word, a)


def _combo_acts_trivially(p: OddPrime, row: dict[Word, int], a: int) -> bool:
    total = 0
    target = None
    for w, c in row.items():
        hit = act_word_on_projective(p, w, a)
        if hit is None:
            continue
        coeff, exponent = hit
        if target is None:
            target = exponent
        total = (total + c * coeff) % p.p
    return total == 0


def annihilator_basis(
    p: OddPrime, a: int, max_degree: int, *, verify_span: bool = False
) -> list[AdmissibleMonomial]:
    """Admissible monomials of degree <= max_degree acting as zero on y^a.

    These span the full annihilator ideal in each degree exactly when at
    most one monomial per degree acts nonzero (the action lands in a module
    with at most one basis class per degree, so the action matrix per
    degree has rank <= 1).  verify_span checks that property degree by
    degree and raises with a counterexample if it ever fails.
    """
    if a < -1:
        raise PreconditionError(f"projective classes need a >= -1, got {a}")
    out = []
    alive: dict[int, AdmissibleMonomial] = {}
    for mono in admissible_basis(p, max_degree):
        if act_on_projective(p, mono, a) is None:
            out.append(mono)
        elif verify_span:
            d = mono.degree(p)
            if d in alive:
                raise InconsistencyError(
                    f"annihilator of y^{a} is not monomial-spanned in degree "
                    f"{d}: both {alive[d]} and {mono} act nonzero"
                )
            alive[d] = mono
    return out


# ---------------------------------------------------------------------------
# Milnor primitives


@dataclass(frozen=True)
class MilnorPrimitive:
    index: int
    expansion: FpLinearCombo


def milnor_primitive(p: OddPrime, n: int) -> MilnorPrimitive:
    """Q_0 = b and Q_{n+1} = P^(p^n) Q_n - Q_n P^(p^n), in admissible form;
    |Q_n| = 2p^n - 1."""
    if n < 0:
        raise PreconditionError(f"Milnor primitive index must be >= 0, got {n}")
    combo: dict[Word, int] = {BETA: 1}
    for m in range(n):
        s = p.p**m
        acc = _combo_product(p, (s,), combo)
        for w, c in combo.items():
            for w2, c2 in _nf(p.p, w + (s,)):
                acc[w2] = (acc.get(w2, 0) - c * c2) % p.p
        combo = {w: c for w, c in acc.items() if c}
    return MilnorPrimitive(n, FpLinearCombo.from_word_dict(p, combo))


# ---------------------------------------------------------------------------
# Left ideals and quotient-module dimensions


def _fp_rank(p: OddPrime, rows: list[dict[Word, int]]) -> int:
    """Rank over F_p of rows keyed by words; exact Gaussian elimination."""
    pivots: dict[Word, dict[Word, int]] = {}
    rank = 0
    for row in rows:
        row = {w: c % p.p for w, c in row.items() if c % p.p}
        while row:
            key = max(row)
            piv = pivots.get(key)
            if piv is None:
                inv = pow(row[key], p.p - 2, p.p)
                pivots[key] = {w: c * inv % p.p for w, c in row.items()}
                rank += 1
                break
            factor = row[key]
            for w, c in piv.items():
                row[w] = (row.get(w, 0) - factor * c) % p.p
                if not row[w]:
                    del row[w]
        # an emptied row is dependent; move on
    return rank


def _ideal_rows(
    p: OddPrime, generators: list[FpLinearCombo], max_degree: int
) -> dict[int, list[dict[Word, int]]]:
    rows: dict[int, list[dict[Word, int]]] = {}
    basis = admissible_basis(p, max_degree)
    for g in generators:
        gdict = g.word_dict()
        gdeg = g.degree(p)
        if gdeg is None:
            continue
        for x in basis:
            d = x.degree(p) + gdeg
            if d > max_degree:
                continue
            row = _combo_product(p, x.word, gdict)
            if row:
                rows.setdefault(d, []).append(row)
    return rows


def left_ideal_dims(
    p: OddPrime, generators: list[FpLinearCombo], max_degree: int
) -> dict[int, int]:
    """Graded dimensions of the left ideal spanned by x*g for admissible x
    and the given homogeneous generators; zero entries omitted."""
    rows = _ideal_rows(p, generators, max_degree)
    return {d: r for d in sorted(rows) if (r := _fp_rank(p, rows[d]))}


QUOTIENT_SPECS = (
    "C/A(b)",
    "C/A(b,Q1)",
    "C_a/A(b,Q1)",
    "A//E1",
    "A//A1",
    "I(A)/A(b,P1)",
    "CP[a]/A(y^a)",
)


def _basis_dims(p: OddPrime, max_degree: int) -> dict[int, int]:
    dims: dict[int, int] = {}
    for mono in admissible_basis(p, max_degree):
        d = mono.degree(p)
        dims[d] = dims.get(d, 0) + 1
    return dims


def quotient_module_dims(
    p: OddPrime, spec: str, max_degree: int, a: int | None = None
) -> dict[int, int]:
    """Graded dimensions of the named quotient module, degrees 0..max_degree,
    zero entries omitted.

    Specs:
      "C/A(b)", "C/A(b,Q1)"  — the annihilator ideal of y^(-1) modulo the
          left ideal on the Bockstein (and Q_1);
      "C_a/A(b,Q1)"          — the annihilator ideal of y^a likewise (pass a);
      "A//E1"                — the whole algebra modulo A(b, Q1);
      "A//A1"                — the whole algebra modulo A(b, P1);
      "I(A)/A(b,P1)"         — the augmentation ideal modulo A(b, P1);
      "CP[a]/A(y^a)"         — the stunted projective eigensummand on
          exponents k >= a, k = a mod p-1 (internal degree 2k), modulo the
          cyclic submodule on y^a (pass a).

    For the annihilator quotients the ideal is verified to annihilate the
    defining class row by row (the containment is checked, not assumed).
    """
    if spec not in QUOTIENT_SPECS:
        raise PreconditionError(f"unknown quotient spec {spec!r}")
    if max_degree < 0:
        raise PreconditionError(f"max_degree must be >= 0, got {max_degree}")

    if spec == "CP[a]/A(y^a)":
        if a is None or a < -1:
            raise PreconditionError("CP[a]/A(y^a) needs a >= -1")
        if a >= 0 and max_degree < 2 * a:
            return {}
        hit = set()
        for mono in admissible_basis(p, max_degree - 2 * a):
            image = act_on_projective(p, mono, a)
            if image is not None:
                hit.add(image[1])
        dims: dict[int, int] = {}
        k = a
        while 2 * k <= max_degree:
            if k not in hit:
                dims[2 * k] = 1
            k += p.p - 1
        return dims

    beta = adem_normalize(p, BETA)
    if spec in ("A//E1", "C/A(b,Q1)", "C_a/A(b,Q1)"):
        generators = [beta, milnor_primitive(p, 1).expansion]
    elif spec == "C/A(b)":
        generators = [beta]
    else:  # A//A1, I(A)/A(b,P1)
        generators = [beta, adem_normalize(p, (1,))]

    if spec in ("C/A(b)", "C/A(b,Q1)", "C_a/A(b,Q1)"):
        if spec.startswith("C_a"):
            if a is None or a < 1:
                raise PreconditionError("C_a/A(b,Q1) needs a >= 1")
            target = a
        else:
            target = -1
        numerator: dict[int, int] = {}
        for mono in annihilator_basis(p, target, max_degree, verify_span=True):
            d = mono.degree(p)
            numerator[d] = numerator.get(d, 0) + 1
    else:
        numerator = _basis_dims(p, max_degree)
        if spec == "I(A)/A(b,P1)":
            del numerator[0]
        target = None

    rows = _ideal_rows(p, generators, max_degree)
    if target is not None:
        for d, degree_rows in rows.items():
            for row in degree_rows:
                if not _combo_acts_trivially(p, row, target):
                    raise InconsistencyError(
                        f"left ideal is not contained in the annihilator of "
                        f"y^{target}: a degree-{d} element acts nonzero"
                    )
    dims = {}
    for d in sorted(numerator):
        val = numerator[d] - _fp_rank(p, rows.get(d, []))
        if val < 0:
            raise InconsistencyError(
                f"{spec}: ideal exceeds numerator in degree {d}"
            )
        if val:
            dims[d] = val
    return dims

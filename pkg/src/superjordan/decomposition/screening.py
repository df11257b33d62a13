"""Candidate type pairs for J = A + B and their exclusion by necessary conditions.

Every rule is a mechanical check tied to a single argument.  A pair is
excluded by the first rule that fires, and the trace records that rule, a
short name for the argument, and the numbers that made it fire.  Pairs that
pass every rule survive; survivors are a superset of what actually exists.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from ..catalog import FamilySpec, build, family_dims, parse_spec
from ..superalgebra import ODD, Subspace, find_identity, graded_closure, product
from .embedding import embedding_exists

__all__ = [
    "RULE_SET_VERSION",
    "RULES",
    "Candidate",
    "Exclusion",
    "CandidatePair",
    "ScreeningReport",
    "screen",
    "enumerate_candidates",
]

RULE_SET_VERSION = "1.0"

# rule id -> the argument it encodes
RULES = {
    "R-DIM": "per-parity dimension count",
    "R-K3": "K3 has no finite-dimensional associative specialization",
    "R-JVF": "spin factors with odd part have infinite-dimensional envelopes",
    "R-ODDGEN": "a part holding the whole odd part holds the subalgebra it generates",
    "R-ENV": "envelope containment and the full-envelope part",
    "R-OSP-SHAPE": "projection shapes beside a full-envelope osp part",
    "R-PN-SHAPE": "partners of a full-envelope P(n) part when n = m",
    "R-ANN": "two parts with annihilators kill a0 M b0",
    "R-HALF": "unital simple matrix subalgebras have at most half the size",
    "R-OSPTARGET": "identity case analysis inside osp targets",
    "R-MAXDIM": "maximal part dimensions inside P(n) and Q(n)",
    "R-JVFTARGET": "odd squares of a spin factor lie on the identity line",
    "R-UNIT": "parts forced to contain the identity overlap in F1",
    "R-EMBED": "no graded embedding (Groebner basis is 1)",
}

_FAMILY_ORDER = {"osp": 0, "P": 1, "Q": 2, "M": 3, "JVf": 4, "K3": 5, "Dt": 6}
_GENERIC_T = Fraction(2)  # stands in for D_t with t outside {0, 1, -1}


@dataclass(frozen=True)
class Candidate:
    spec: FamilySpec
    placement: str = ""  # "even" / "odd": block holding the orthogonal part of an osp

    def __str__(self) -> str:
        return f"{self.spec}@{self.placement}" if self.placement else str(self.spec)

    @property
    def family(self) -> str:
        return self.spec.family

    @property
    def params(self) -> tuple:
        return self.spec.params

    @property
    def dims(self) -> tuple[int, int]:
        return family_dims(self.spec)

    @property
    def dim(self) -> int:
        return sum(self.dims)

    def sort_key(self):
        return (_FAMILY_ORDER[self.family], tuple(str(p) for p in self.params), self.placement)

    def type_name(self) -> str:
        """Unoriented type: M(k,l) and M(l,k) agree."""
        if self.family == "M":
            k, l = sorted(self.params)
            return f"M({k},{l})"
        return str(self.spec)

    @property
    def envelope_size(self) -> int | None:
        f, p = self.family, self.params
        if f == "M":
            return p[0] + p[1]
        if f == "osp":
            return p[0] + 2 * p[1]
        if f in ("P", "Q"):
            return 2 * p[0]
        return None


@dataclass(frozen=True)
class Exclusion:
    rule: str
    anchor: str
    detail: str
    heuristic: bool = False


@dataclass
class CandidatePair:
    a: Candidate
    b: Candidate
    exclusion: Exclusion | None = None
    note: str = ""

    @property
    def survives(self) -> bool:
        return self.exclusion is None

    @property
    def trace(self):
        if self.exclusion is None:
            return "survives"
        e = self.exclusion
        return [(e.rule, e.anchor, e.detail)]

    def oriented_key(self) -> tuple[str, str]:
        return str(self.a), str(self.b)

    def type_key(self) -> tuple[str, str]:
        return tuple(sorted((self.a.type_name(), self.b.type_name())))


@dataclass
class ScreeningReport:
    target: FamilySpec
    survivors: list[CandidatePair]
    excluded: list[CandidatePair]
    rule_set_version: str = RULE_SET_VERSION
    candidates: list[Candidate] = field(default_factory=list)

    def survivor_types(self, annotated: bool = True) -> set[tuple[str, str]]:
        return {p.type_key() for p in self.survivors if annotated or not p.note}

    def survivor_keys(self, annotated: bool = True) -> set[tuple[str, str]]:
        return {p.oriented_key() for p in self.survivors if annotated or not p.note}

    def rule_counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for p in self.excluded:
            out[p.exclusion.rule] = out.get(p.exclusion.rule, 0) + 1
        return out


# --- enumeration ------------------------------------------------------------------------


def enumerate_candidates(target: FamilySpec, max_dim: int | None = None) -> list[Candidate]:
    """Simple family types of dimension below the target's (and below max_dim)."""
    d = sum(family_dims(target))
    bound = d if max_dim is None else min(d, max_dim + 1)
    in_matrix = target.family == "M"
    out: list[Candidate] = []
    for k in range(1, bound):
        for l in range(1, bound):
            if (k + l) ** 2 < bound and (in_matrix or k <= l):
                out.append(Candidate(FamilySpec("M", (k, l))))
    for p in range(1, bound):
        for q in range(1, bound):
            spec = FamilySpec("osp", (p, q))
            if sum(family_dims(spec)) < bound:
                for pl in (("even", "odd") if in_matrix else ("",)):
                    out.append(Candidate(spec, pl))
    for k in range(2, bound):
        if 2 * k * k < bound:
            out.append(Candidate(FamilySpec("P", (k,))))
            out.append(Candidate(FamilySpec("Q", (k,))))
    for a in range(0, bound):
        for b in range(0, bound):
            if a + 2 * b >= 2 and 1 + a + 2 * b < bound:
                out.append(Candidate(FamilySpec("JVf", (a, b))))
    if 3 < bound:
        out.append(Candidate(FamilySpec("K3")))
    if 4 < bound:
        out.append(Candidate(FamilySpec("Dt")))
    return sorted(out, key=Candidate.sort_key)


# --- computed facts ---------------------------------------------------------------------


def _representative(spec: FamilySpec):
    if spec.family == "Dt" and not spec.params:
        spec = FamilySpec("Dt", (_GENERIC_T,))
    return build(spec)


@lru_cache(maxsize=None)
def _odd_generates(target: FamilySpec) -> bool:
    """Does the odd part generate the whole target?"""
    T = build(target)
    if not T.odd_indices:
        return False
    odd = Subspace.span(T, [T.basis_vector(i) for i in T.odd_indices])
    return graded_closure(T, odd).dim == T.dim


@lru_cache(maxsize=None)
def _odd_square_on_identity(spec: FamilySpec) -> tuple[bool, str]:
    """Is span(X1 . X1) inside F * 1_X (and nonzero only if X has an identity)?"""
    X = _representative(spec)
    odd = [X.basis_vector(i) for i in X.odd_indices]
    prods = [product(X, u, v) for u, v in itertools.combinations_with_replacement(odd, 2)]
    S = Subspace.span(X, [p for p in prods if any(p)])
    if S.dim == 0:
        return True, "odd squares vanish"
    one = find_identity(X, Subspace.whole(X))
    if one is None:
        return False, f"odd squares span dim {S.dim}, {spec} has no identity"
    if S.dim > 1:
        return False, f"odd squares span dim {S.dim} > 1"
    if not Subspace.span(X, [one]).same_space(S):
        return False, "odd squares span a line other than F*1"
    return True, "odd squares on F*1"


@lru_cache(maxsize=None)
def _embeds(spec: FamilySpec, target: FamilySpec) -> bool:
    return embedding_exists(_representative(spec), build(target))


# --- rules ------------------------------------------------------------------------------


class _Ctx:
    def __init__(self, target: FamilySpec):
        self.target = target
        self.family = target.family
        self.params = target.params
        self.dims = family_dims(target)
        self.dim = sum(self.dims)
        f, p = self.family, self.params
        if f == "M":
            self.N = p[0] + p[1]
        elif f == "osp":
            self.N = p[0] + 2 * p[1]
        elif f in ("P", "Q"):
            self.N = 2 * p[0]
        else:
            self.N = None


def _ex(rule: str, detail: str, heuristic: bool = False) -> Exclusion:
    return Exclusion(rule, RULES[rule], detail, heuristic)


def _rule_dim(c: _Ctx, A: Candidate, B: Candidate):
    te, to = c.dims
    for X in (A, B):
        e, o = X.dims
        if e > te or o > to:
            return _ex("R-DIM", f"{X}: parity dims ({e},{o}) exceed target ({te},{to})")
        if X.dim >= c.dim:
            return _ex("R-DIM", f"{X}: dim {X.dim} >= {c.dim}, not proper")
    (ae, ao), (be, bo) = A.dims, B.dims
    if ae + be < te:
        return _ex("R-DIM", f"even {ae}+{be} < {te}")
    if ao + bo < to:
        return _ex("R-DIM", f"odd {ao}+{bo} < {to}")
    return None


def _rule_k3(c: _Ctx, A: Candidate, B: Candidate):
    if c.family in ("M", "osp", "P", "Q", "JVf"):
        for X in (A, B):
            if X.family == "K3":
                return _ex("R-K3", f"target {c.target} is special; K3 is not")
    return None


def _rule_jvf(c: _Ctx, A: Candidate, B: Candidate):
    if c.family in ("M", "osp", "P", "Q"):
        for X in (A, B):
            if X.family == "JVf" and X.params[1] >= 1:
                return _ex("R-JVF", f"{X} has odd part of dim {2 * X.params[1]}; target envelope is M_{c.N}")
    return None


def _rule_oddgen(c: _Ctx, A: Candidate, B: Candidate):
    to = c.dims[1]
    if to == 0 or c.family in ("K3", "Dt"):
        return None
    for X in (A, B):
        if X.dims[1] == to and _odd_generates(c.target):
            return _ex("R-ODDGEN", f"{X} has odd dim {to} = target odd dim and the odd part generates {c.target}")
    return None


# full matrix targets


def _full_envelope(c: _Ctx, X: Candidate) -> bool:
    n, m = c.params
    if X.family == "osp":
        return X.envelope_size == c.N
    return X.family == "P" and n == m and X.params[0] == n


def _rule_env(c: _Ctx, A: Candidate, B: Candidate):
    n, m = c.params
    N = c.N
    for X in (A, B):
        s = X.envelope_size
        if X.family == "M" and s >= N:
            return _ex("R-ENV", f"{X}: k+l = {s} >= n+m = {N}, envelope cannot fit")
        if X.family in ("osp", "P", "Q") and s > N:
            return _ex("R-ENV", f"{X}: envelope size {s} > {N}")
        if X.family == "P" and s == N and n != m:
            return _ex("R-ENV", f"{X}: 2k = n+m = {N} with n != m puts the even part in one block, forcing odd part 0")
    if not (_full_envelope(c, A) or _full_envelope(c, B)):
        return _ex("R-ENV", f"neither part has envelope M_{N}: need osp(p,q) with p+2q = {N}"
                   + (f" or P({n})" if n == m else ""))
    return None


def _osp_orientation_ok(n: int, m: int, X: Candidate) -> tuple[bool, str]:
    p, q = X.params
    if X.placement == "even":
        return p == n and 2 * q == m, f"even placement needs p = n = {n}, 2q = m = {m}; got p={p}, 2q={2 * q}"
    return p == m and 2 * q == n, f"odd placement needs p = m = {m}, 2q = n = {n}; got p={p}, 2q={2 * q}"


def _rule_osp_shape(c: _Ctx, A: Candidate, B: Candidate):
    n, m = c.params
    fulls = [X for X in (A, B) if X.family == "osp" and _full_envelope(c, X)]
    if not fulls:
        return None
    # prefer a correctly oriented full osp part as the fixed one
    fulls.sort(key=lambda X: not _osp_orientation_ok(n, m, X)[0])
    O = fulls[0]
    P = B if O is A else A
    ok, why = _osp_orientation_ok(n, m, O)
    if not ok:
        return _ex("R-OSP-SHAPE", f"{O}: {why} (projections H(F_p), H(Q_q) must fill the blocks)")
    even = O.placement == "even"
    if P.family == "Dt":
        return _ex("R-OSP-SHAPE", f"partner {P}: n^2 <= n^2-2n+4 and m^2 <= m^2-2m+4 force n,m <= 2; "
                   f"then dims {O.dim}+4 < {c.dim}" if max(n, m) <= 2 else
                   f"partner {P}: n^2 <= n^2-2n+4 fails for (n,m)=({n},{m})")
    if P.family == "osp":
        return _ex("R-OSP-SHAPE", f"two osp parts: (n+m)^2 <= 2(n(n+1)/2+m(m-1)/2+nm) forces m <= n "
                   f"and symmetrically n <= m; (n,m)=({n},{m})" if n != m else
                   f"two osp parts with n = m = {n}: partner must be M({n - 1},{n})")
    if P.family in ("P", "Q"):
        k = P.params[0]
        if n != m:
            return _ex("R-OSP-SHAPE", f"partner {P}: odd count needs nm = {n * m} <= k^2 = {k * k} "
                       f"but k <= min(n,m) with n != m gives k^2 < nm")
        return _ex("R-OSP-SHAPE", f"partner {P} with n = m = {n}: partner must be M({n - 1},{n})")
    if P.family != "M":
        return _ex("R-OSP-SHAPE", f"partner {P} is not of full matrix type")
    k, l = P.params
    if n == m:
        want = (n - 1, n) if even else (n, n - 1)
        if (k, l) != want:
            return _ex("R-OSP-SHAPE", f"n = m = {n}: a non-simple projection gives 2n^2 <= 2n^2-2n+2, "
                       f"so both projections are simple and the partner is M{want}; got {P}")
        return None
    if even:
        if not (k in (n - 1, n) or l == m):
            return _ex("R-OSP-SHAPE", f"even placement: partner M(k,l) needs k in {{{n - 1},{n}}} or l = {m}; got {P}")
    else:
        if not (l in (m - 1, m) or k == n):
            return _ex("R-OSP-SHAPE", f"odd placement: partner M(k,l) needs l in {{{m - 1},{m}}} or k = {n}; got {P}")
    return None


def _osp_shape_note(c: _Ctx, A: Candidate, B: Candidate) -> str:
    if c.family != "M":
        return ""
    n, m = c.params
    O = A if A.family == "osp" else B
    P = B if O is A else A
    if O.family != "osp" or P.family != "M" or n == m:
        return ""
    k, l = P.params
    if O.placement == "even" and (k, l) != (n - 1, m):
        return f"shape M({k},{l}) allowed by k in {{n-1,n}} or l=m; only M({n - 1},{m}) is realized by the construction"
    if O.placement == "odd" and (k, l) != (n, m - 1):
        return f"shape M({k},{l}) allowed by l in {{m-1,m}} or k=n; only M({n},{m - 1}) is realized by the construction"
    return ""


def _rule_pn_shape(c: _Ctx, A: Candidate, B: Candidate):
    n, m = c.params
    if n != m:
        return None
    Pn = [X for X in (A, B) if X.family == "P" and X.params[0] == n]
    if not Pn:
        return None
    P = Pn[0]
    X = B if P is A else A
    if X.family in ("P", "Q"):
        k = X.params[0]
        return _ex("R-PN-SHAPE", f"4n^2 <= 2n^2+2k^2 forces k = n = {n} (k={k}); the sum is direct "
                   "but both parts contain the identity")
    if X.family == "osp":
        return _ex("R-PN-SHAPE", f"partner {X}: a non-simple projection gives 2n^2 <= 2n^2-2n+2; "
                   f"simple projections give k <= {n}, l <= {n}/2, dim <= 2n^2, a direct sum of two unital parts")
    if X.family == "M":
        k, l = X.params
        return _ex("R-PN-SHAPE", f"partner {X}: 4n^2 <= 2n^2+(k+l)^2 needs k+l >= sqrt(2)*{n}; "
                   f"1 in B forces M(n/2,n) with envelope {Fraction(3 * n, 2)} > {n}; "
                   "1 not in B leaves A0 = diag(X, X^t), which cannot fill the blocks")
    return _ex("R-PN-SHAPE", f"partner {X} is not of type P, Q, osp or M")


# osp targets


def _can_hold_identity(c: _Ctx, X: Candidate) -> tuple[bool, str]:
    s = X.envelope_size
    if s is None:
        return True, f"{X}: no size bound"
    ok = s == c.N or 2 * s <= c.N
    return ok, f"{X}: envelope size {s}" + (" fits" if ok else f" is neither {c.N} nor <= {c.N}/2")


def _rule_ann(c: _Ctx, A: Candidate, B: Candidate):
    ca, wa = _can_hold_identity(c, A)
    cb, wb = _can_hold_identity(c, B)
    if not ca and not cb:
        return _ex("R-ANN", f"neither part can contain 1 ({wa}; {wb}), so a0 M_{c.N} b0 = 0")
    return None


def _both_unital_case(c: _Ctx, A: Candidate, B: Candidate) -> str | None:
    n, m = c.params
    te, _ = c.dims
    (ae, _), (be, _) = A.dims, B.dims
    if ae + be - 1 < te:
        return f"1 in both: even {ae}+{be}-1 < {te}"
    if A.dim + B.dim - 1 < c.dim:
        return f"1 in both: {A.dim}+{B.dim}-1 < {c.dim}"
    fams = sorted((A.family, B.family), key=lambda f: _FAMILY_ORDER[f])
    N = c.N
    if fams == ["M", "M"] or (fams[1] == "M" and fams[0] in ("P", "Q")):
        if n >= 2:
            return f"H(F_n) needs a non-simple projection: (n^2+n)/2 <= 2(n^2/4-n+2) fails at n={n}"
        return "n = 1: the H(Q_m) projections force m <= 2, then a direct sum of unital parts"
    if set(fams) <= {"P", "Q"}:
        return "H(F_n) is not a sum of two proper subalgebras of type H(R_k)"
    if "osp" in fams:
        other = B if A.family == "osp" else A
        osp_part = A if A.family == "osp" else B
        so, sp = osp_part.envelope_size, other.envelope_size or 0
        if 2 * so > N or 2 * sp > N:
            return f"unital parts need envelope sizes <= {N}/2; got {so}, {sp}"
        return None
    return None


def _rule_osptarget(c: _Ctx, A: Candidate, B: Candidate):
    n, m = c.params
    for X in (A, B):
        if X.family == "Dt":
            if n > 2 or m > 1:
                return _ex("R-OSPTARGET", f"{X} part: n(n+1)/2 <= n^2/2-3n/2+5 and 2m^2-m <= 2m^2-5m+6 "
                           f"need n <= 2, m <= 1; target ({n},{m})")
            return _ex("R-OSPTARGET", f"{X} part in osp({n},{m}): it reduces to osp(1,1) form and two osp "
                       f"parts need n^2/2+2nm+2m^2 <= 4m, i.e. {Fraction(n * n, 2) + 2 * n * m + 2 * m * m} <= {4 * m}")
    ca, _ = _can_hold_identity(c, A)
    cb, _ = _can_hold_identity(c, B)
    reasons = []
    for ia, ib in ((True, True), (True, False), (False, True)):
        if (ia and not ca) or (ib and not cb):
            continue
        if ia and ib:
            r = _both_unital_case(c, A, B)
            if r is None:
                return None
            reasons.append(r)
        else:
            U = A if ia else B
            reasons.append(f"1 only in {U}: H(F_n)v has dim n but the unital projection reaches kk1+(2l-1)l1 < n")
    return _ex("R-OSPTARGET", "; ".join(reasons))


# P(n), Q(n) targets


def _max_dim(c: _Ctx, X: Candidate) -> int | None:
    n = c.params[0]
    if X.family == "M":
        return n * n
    if X.family == "osp":
        return (n * n + n) // 2
    if X.family in ("P", "Q"):
        return 2 * (n - 1) ** 2
    return None


def _rule_maxdim(c: _Ctx, A: Candidate, B: Candidate):
    n = c.params[0]
    for X in (A, B):
        if X.family == "Dt":
            if n > 2:
                return _ex("R-MAXDIM", f"{X} part: n^2 <= 2+n^2-2n+2 needs n <= 2; n = {n}")
            return _ex("R-MAXDIM", f"{X} part at n = 2: partner even part F+F, both unital, 4 > 2+2-1")
        mx = _max_dim(c, X)
        if mx is not None and X.dim > mx:
            return _ex("R-MAXDIM", f"{X}: dim {X.dim} > max {mx}")
    if A.family == "M" and B.family == "M":
        return _ex("R-MAXDIM", f"both parts have dim <= n^2 = {n * n}: the sum is direct, "
                   "so one even part misses 1 and the blocks cannot be spanned")
    return None


def _rule_half(c: _Ctx, A: Candidate, B: Candidate):
    n = c.params[0]
    for X, Y in ((A, B), (B, A)):
        if X.family in ("P", "Q") and Y.family in ("osp", "M"):
            k = X.params[0]
            bound = (n // 2) ** 2 * 2
            if Y.dim + bound < c.dim or 2 * k > n:
                return _ex("R-HALF", f"1 in {X} needs k <= n/2 = {Fraction(n, 2)} (k={k}) and then "
                           f"dim <= {Y.dim}+{bound} < {c.dim}; 1 not in {X} leaves an annihilator")
    return None


# spin factor targets


def _odd_nonzero(X: Candidate) -> bool:
    return X.dims[1] > 0


def _rule_jvftarget(c: _Ctx, A: Candidate, B: Candidate):
    for X in (A, B):
        if _odd_nonzero(X):
            ok, why = _odd_square_on_identity(X.spec)
            if not ok:
                return _ex("R-JVFTARGET", f"{X}: {why}; in {c.target} odd squares lie on F*1")
    return None


def _rule_unit(c: _Ctx, A: Candidate, B: Candidate):
    forced = [X for X in (A, B) if _odd_nonzero(X) and X.family == "JVf"]
    if len(forced) < 2:
        return None
    te, _ = c.dims
    (ae, _), (be, _) = A.dims, B.dims
    if ae + be - 1 < te:
        return _ex("R-UNIT", f"both parts contain 1: even {ae}+{be}-1 < {te}")
    if A.dim + B.dim - 1 < c.dim:
        return _ex("R-UNIT", f"both parts contain 1: {A.dim}+{B.dim}-1 < {c.dim}")
    return None


def _rule_embed(c: _Ctx, A: Candidate, B: Candidate):
    for X in (A, B):
        if not _embeds(X.spec, c.target):
            return _ex("R-EMBED", f"{X} has no graded embedding into {c.target}")
    return None


_PIPELINE = {
    "M": [_rule_env, _rule_osp_shape, _rule_pn_shape],
    "osp": [_rule_ann, _rule_osptarget],
    "P": [_rule_maxdim, _rule_half],
    "Q": [_rule_maxdim, _rule_half],
    "JVf": [_rule_jvftarget, _rule_unit],
    "Dt": [_rule_embed, _rule_unit],
    "K3": [_rule_embed],
}


def _judge(c: _Ctx, A: Candidate, B: Candidate) -> CandidatePair:
    for rule in [_rule_dim, _rule_k3, _rule_jvf, _rule_oddgen] + _PIPELINE[c.family]:
        ex = rule(c, A, B)
        if ex is not None:
            return CandidatePair(A, B, ex)
    return CandidatePair(A, B, None, _osp_shape_note(c, A, B))


def screen(target: FamilySpec | str, max_dim: int | None = None) -> ScreeningReport:
    """Enumerate unordered candidate pairs for target and run the rule pipeline."""
    if isinstance(target, str):
        target = parse_spec(target)
    target.validate()
    c = _Ctx(target)
    cands = enumerate_candidates(target, max_dim)
    survivors, excluded = [], []
    for i, A in enumerate(cands):
        for B in cands[i:]:
            pair = _judge(c, A, B)
            (survivors if pair.survives else excluded).append(pair)
    return ScreeningReport(target, survivors, excluded, RULE_SET_VERSION, cands)

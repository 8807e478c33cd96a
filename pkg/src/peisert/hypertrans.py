"""Symmetries of the hypergeometric parameter space.

A 3F2 with every parameter a power of chi4 is indexed by a 5-tuple
(t1..t5) in Z_4^5 subject to the non-degeneracy conditions below; the
admissible set is called X here.  Seven classical transformation
formulas induce affine maps f1..f7 on X, generating a group of 24 maps
under composition; 3F2 values at lambda = 1 are constant on each orbit
of that action (the sign prefactors of the underlying formulas are
powers of chi4 evaluated at -1, which is 1 since 8 divides q-1).

Maps are compared extensionally, i.e. by their action on the finite set
X, since distinct composite formulas can define the same function.
"""

from __future__ import annotations

from typing import Callable, Iterable

from .charsum import CharCtx
from .cyclo import Cyclo8

Tuple5 = tuple[int, int, int, int, int]


def in_space(t: Tuple5) -> bool:
    """Membership in X: t1,t2,t3 avoid {0, t4, t5} and t1+t2+t3 != t4+t5.

    The sum condition must read t4+t5 (not "avoid both t4 and t5"):
    under the latter the seven maps do not even stabilize the set,
    e.g. f1 sends (1,2,2,3,3) to (3,2,3,1,0) whose coordinate sum is
    t5.  With the condition as implemented all seven maps are
    verified exhaustively to act on X, and they generate a group of
    order exactly 24.
    """
    t1, t2, t3, t4, t5 = (v % 4 for v in t)
    if any(v in (0, t4, t5) for v in (t1, t2, t3)):
        return False
    return (t1 + t2 + t3) % 4 != (t4 + t5) % 4


def parameter_space() -> list[Tuple5]:
    """All admissible tuples, lexicographically sorted."""
    out = []
    for code in range(4 ** 5):
        t = []
        c = code
        for _ in range(5):
            t.append(c % 4)
            c //= 4
        t = tuple(reversed(t))
        if in_space(t):
            out.append(t)
    return out


def _f1(t: Tuple5) -> Tuple5:
    t1, t2, t3, t4, t5 = t
    return ((t2 - t4) % 4, (t1 - t4) % 4, (t3 - t4) % 4, (-t4) % 4, (t5 - t4) % 4)


def _f2(t: Tuple5) -> Tuple5:
    t1, t2, t3, t4, t5 = t
    return (t1, (t1 - t4) % 4, (t1 - t5) % 4, (t1 - t2) % 4, (t1 - t3) % 4)


def _f3(t: Tuple5) -> Tuple5:
    t1, t2, t3, t4, t5 = t
    return ((t2 - t4) % 4, t2, (t2 - t5) % 4, (t2 - t1) % 4, (t2 - t3) % 4)


def _f4(t: Tuple5) -> Tuple5:
    t1, t2, t3, t4, t5 = t
    return (t1, t2, (t5 - t3) % 4, (t1 + t2 - t4) % 4, t5)


def _f5(t: Tuple5) -> Tuple5:
    t1, t2, t3, t4, t5 = t
    return (t1, (t4 - t2) % 4, t3, t4, (t1 + t3 - t5) % 4)


def _f6(t: Tuple5) -> Tuple5:
    t1, t2, t3, t4, t5 = t
    return ((t4 - t1) % 4, t2, t3, t4, (t2 + t3 - t5) % 4)


def _f7(t: Tuple5) -> Tuple5:
    t1, t2, t3, t4, t5 = t
    return ((t4 - t1) % 4, (t4 - t2) % 4, t3, t4, (t4 + t5 - t1 - t2) % 4)


GENERATOR_RULES: dict[str, Callable[[Tuple5], Tuple5]] = {
    "f1": _f1, "f2": _f2, "f3": _f3, "f4": _f4, "f5": _f5, "f6": _f6, "f7": _f7,
}


class TransformMap:
    """A map X -> X, stored extensionally as its action vector over X."""

    __slots__ = ("tag", "_action", "_space_index")

    def __init__(self, tag: str, action: tuple[Tuple5, ...],
                 space_index: dict[Tuple5, int]):
        self.tag = tag
        self._action = action
        self._space_index = space_index

    @classmethod
    def from_rule(cls, tag: str, rule: Callable[[Tuple5], Tuple5],
                  space: list[Tuple5],
                  space_index: dict[Tuple5, int]) -> "TransformMap":
        images = []
        for t in space:
            img = rule(t)
            if img not in space_index:
                raise ValueError(f"{tag} maps {t} outside the space: {img}")
            images.append(img)
        return cls(tag, tuple(images), space_index)

    def __call__(self, t: Tuple5) -> Tuple5:
        idx = self._space_index.get(tuple(v % 4 for v in t))
        if idx is None:
            raise ValueError(f"{t} is not an admissible tuple")
        return self._action[idx]

    def compose(self, other: "TransformMap", tag: str | None = None) -> "TransformMap":
        """self after other."""
        action = tuple(self._action[self._space_index[img]]
                       for img in other._action)
        return TransformMap(tag or f"{self.tag}*{other.tag}",
                            action, self._space_index)

    def __eq__(self, other) -> bool:
        return isinstance(other, TransformMap) and self._action == other._action

    def __hash__(self) -> int:
        return hash(self._action)

    def __repr__(self) -> str:
        return f"TransformMap({self.tag})"


class TransformGroup:
    """The closure of f1..f7 under composition, acting on X."""

    def __init__(self) -> None:
        self.space = parameter_space()
        self.index = {t: i for i, t in enumerate(self.space)}
        ident = TransformMap("f0", tuple(self.space), self.index)
        self.identity = ident
        self.generators = {
            tag: TransformMap.from_rule(tag, rule, self.space, self.index)
            for tag, rule in GENERATOR_RULES.items()
        }
        self.maps = self._close()

    def _close(self) -> list[TransformMap]:
        gens = list(self.generators.values())
        seen = {self.identity: self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for m in frontier:
                for gen in gens:
                    comp = gen.compose(m)
                    if comp not in seen:
                        seen[comp] = comp
                        nxt.append(comp)
            frontier = nxt
        return sorted(seen, key=lambda m: m._action)

    def explicit_family(self) -> set[TransformMap]:
        """The family {f0, f_i, f_j o f_l, f4 o f1, f6 o f2, f5 o f3,
        f1 o f4 o f1 : 1<=i<=7, 1<=j<=3, 4<=l<=7} as extensional maps."""
        g = self.generators
        out = {self.identity}
        out.update(g.values())
        for j in (1, 2, 3):
            for l in (4, 5, 6, 7):
                out.add(g[f"f{j}"].compose(g[f"f{l}"]))
        out.add(g["f4"].compose(g["f1"]))
        out.add(g["f6"].compose(g["f2"]))
        out.add(g["f5"].compose(g["f3"]))
        out.add(g["f1"].compose(g["f4"].compose(g["f1"])))
        return out

    def orbits(self) -> list[frozenset[Tuple5]]:
        """Partition of X under the group action, largest-first."""
        remaining = set(self.space)
        parts = []
        while remaining:
            seed = min(remaining)
            orbit = {seed}
            frontier = [seed]
            while frontier:
                t = frontier.pop()
                for m in self.maps:
                    img = m(t)
                    if img not in orbit:
                        orbit.add(img)
                        frontier.append(img)
            parts.append(frozenset(orbit))
            remaining -= orbit
        return sorted(parts, key=lambda o: (-len(o), min(o)))

    def orbit_of(self, t: Tuple5) -> frozenset[Tuple5]:
        t = tuple(v % 4 for v in t)
        for orbit in self.orbits():
            if t in orbit:
                return orbit
        raise ValueError(f"{t} is not an admissible tuple")


_GROUP: TransformGroup | None = None


def transform_group() -> TransformGroup:
    global _GROUP
    if _GROUP is None:
        _GROUP = TransformGroup()
    return _GROUP


def orbit_value_check(cs: CharCtx) -> "OrbitValueReport":
    """Evaluate the exact 3F2 at lambda = 1 on every tuple and confirm the
    value is constant on each orbit."""
    grp = transform_group()
    failures = []
    orbit_values: list[tuple[frozenset, Cyclo8]] = []
    for orbit in grp.orbits():
        vals = {t: cs.hyper3f2_tuple(t) for t in sorted(orbit)}
        ref = next(iter(vals.values()))
        bad = {t: v for t, v in vals.items() if v != ref}
        if bad:
            failures.append((orbit, bad))
        orbit_values.append((orbit, ref))
    return OrbitValueReport(q=cs.q, orbit_values=orbit_values, failures=failures)


class OrbitValueReport:
    def __init__(self, q: int, orbit_values, failures):
        self.q = q
        self.orbit_values = orbit_values
        self.failures = failures

    @property
    def ok(self) -> bool:
        return not self.failures

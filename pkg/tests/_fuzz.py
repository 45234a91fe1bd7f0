"""Deterministic corruptions of a valid spherical system.

Each mutation comes with the axiom it is built to break, so a test can
check that validate reports that very axiom and not just anything.
"""
from __future__ import annotations

import random
import zlib
from dataclasses import dataclass, replace

from lunakit.rootsys import RootCombination, classify_spherical_root, pair_index, sp_lower_bound
from lunakit.sphsys import AColor, SphericalSystem

MUTATIONS_PER_CASE = 20


@dataclass(frozen=True)
class Mutation:
    label: str
    system: SphericalSystem
    axiom: str


def _simple_positions(sys: SphericalSystem) -> set[int]:
    return {k for k, s in enumerate(sys.sigma) if sum(s.coeffs) == 1}


def _pool(sys: SphericalSystem) -> list[Mutation]:
    rs = sys.rs
    out: list[Mutation] = []
    nsig = len(sys.sigma)
    simple = _simple_positions(sys)
    sp = set(sys.sp)

    for i, name in enumerate(rs.simple_roots):
        for m in (3, 4):
            bad = RootCombination(tuple(m * int(j == i) for j in range(rs.rank)))
            if nsig:
                k = i % nsig
                sigma = sys.sigma[:k] + (bad,) + sys.sigma[k + 1:]
                out.append(Mutation(f"sigma{k + 1} := {m}{name}", replace(sys, sigma=sigma), "Sigma.kind"))
            else:
                out.append(Mutation(f"add {m}{name}", replace(sys, sigma=(bad,)), "Sigma.kind"))

    for k, s in enumerate(sys.sigma):
        out.append(Mutation(f"repeat sigma{k + 1}", replace(sys, sigma=sys.sigma + (s,)), "Sigma.proportional"))

    for i, name in enumerate(rs.simple_roots):
        if name in sp:
            continue
        if any(pair_index(rs, i, s) != 0 for s in sys.sigma):
            out.append(Mutation(f"put {name} in S^p", replace(sys, sp=sys.sp + (name,)), "S.upper"))

    for k, s in enumerate(sys.sigma):
        kind = classify_spherical_root(rs, s)
        for name in sorted(sp_lower_bound(rs, kind, s)):
            out.append(Mutation(f"drop {name} from S^p",
                                replace(sys, sp=tuple(x for x in sys.sp if x != name)), "S.lower"))

    acols = sys.a_colors
    for ai, a in enumerate(acols):
        def with_row(row, _ai=ai, _a=a):
            return acols[:_ai] + (AColor(_a.name, tuple(row)),) + acols[_ai + 1:]

        for k in range(nsig):
            row = list(a.pairing)
            row[k] = 2
            out.append(Mutation(f"c({a.name}, sigma{k + 1}) := 2", replace(sys, a_colors=with_row(row)), "A1"))
            if k not in simple:
                row = list(a.pairing)
                row[k] = 1
                out.append(Mutation(f"c({a.name}, sigma{k + 1}) := 1 on a non-simple root",
                                    replace(sys, a_colors=with_row(row)), "A1"))
        out.append(Mutation(f"drop {a.name}", replace(sys, a_colors=acols[:ai] + acols[ai + 1:]), "A2.count"))
        out.append(Mutation(f"truncate the row of {a.name}",
                            replace(sys, a_colors=with_row(a.pairing[:-1])), "A.shape"))
        other = acols[(ai + 1) % len(acols)]
        if other is not a:
            out.append(Mutation(f"rename {other.name} to {a.name}",
                                replace(sys, a_colors=acols + (AColor(a.name, other.pairing),)), "A.names"))
        for k in sorted(simple):
            if a.pairing[k] == 1:
                # lowering an entry from 1 leaves the simple root with one A-color
                row = list(a.pairing)
                row[k] = 0
                out.append(Mutation(f"c({a.name}, sigma{k + 1}) := 0", replace(sys, a_colors=with_row(row)),
                                    "A2.count"))
        for k in range(nsig):
            if a.pairing[k] == 1:
                continue
            # every A-color of a valid system is moved, so its partner sum shifts
            row = list(a.pairing)
            row[k] -= 1
            out.append(Mutation(f"c({a.name}, sigma{k + 1}) -= 1", replace(sys, a_colors=with_row(row)), "A2.sum"))
    return out


def mutations(sys: SphericalSystem, key: str, count: int = MUTATIONS_PER_CASE) -> list[Mutation]:
    """``count`` corruptions of ``sys``, chosen by a generator seeded from ``key``."""
    rng = random.Random(zlib.crc32(key.encode()))
    pool = _pool(sys)
    rng.shuffle(pool)
    out = pool[:count]
    n = 0
    while len(out) < count:
        # unknown names in S^p never run out
        n += 1
        out.append(Mutation(f"unknown root z{n}", replace(sys, sp=sys.sp + (f"z{n}",)), "Sp.unknown"))
    return out

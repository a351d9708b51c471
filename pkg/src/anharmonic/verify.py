"""End-to-end verification runs combining the solver, the zero census, the
closed-form QES solutions, asymptotic values and the tree counts."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .polynomial import EvenPolynomial

SUITES = ("theorem1", "theorem2", "corollary", "trees")


@dataclass
class Check:
    name: str
    ok: bool
    values: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"name": self.name, "ok": self.ok, "values": self.values}


@dataclass
class SuiteReport:
    suite: str
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return bool(self.checks) and all(c.ok for c in self.checks)

    def error(self, name: str, exc: Exception) -> None:
        self.checks.append(Check(name, False, {"error": f"{type(exc).__name__}: {exc}"}))

    def add(self, name: str, fn) -> None:
        """Run fn() -> (ok, values); exceptions become failed checks."""
        try:
            ok, values = fn()
        except Exception as exc:  # partial reports are still useful
            self.error(name, exc)
            return
        self.checks.append(Check(name, bool(ok), values))

    def to_dict(self) -> dict:
        return {"suite": self.suite, "ok": self.ok,
                "checks": [c.to_dict() for c in self.checks]}


def theorem1(P: EvenPolynomial, K: int = 3, box=(3.0, 3.0), tol: float = 1e-6,
             workers: int = 1) -> SuiteReport:
    """Zeros of the first K + 1 eigenfunctions lie on the two axes, and the
    asymptotic value in sector 1 is not real."""
    from .asymptotics import table
    from .spectrum import eigenvalues
    from .zeros import Box, census

    rep = SuiteReport("theorem1")
    try:
        pairs = eigenvalues(P, K, tol=1e-10, workers=workers)
    except Exception as exc:
        rep.error("spectrum", exc)
        return rep
    rep.checks.append(Check("spectrum", True, {"lambda": [e.lam for e in pairs]}))
    for e in pairs:
        def one(e=e):
            c = census(P, e.lam, e.parity, Box(*box), tol=tol, k=e.k, locate=False)
            ok = c.offaxis_count == 0 and len(c.real_zeros) == e.k and c.consistent
            return ok, {"k": e.k, "offaxis": c.offaxis_count, "quadrants": list(c.quadrant_counts),
                        "real_zeros": len(c.real_zeros), "imaginary_zeros": len(c.imaginary_zeros),
                        "consistent": c.consistent}

        rep.add(f"census k={e.k}", one)
        if P.degree == 4:
            def asym(e=e):
                t = table(P, e.lam, e.parity)
                defects = t.symmetry_defects()
                a1 = t[1]
                ok = max(defects.values()) < 1e-6 and abs(a1.imag) > 1e-6 * abs(a1)
                return ok, {"k": e.k, "a1": [a1.real, a1.imag], **defects}

            rep.add(f"asymptotic k={e.k}", asym)
    return rep


def theorem2(m: int, p: int, b: float, box=(3.0, 3.0), tol: float = 1e-6) -> SuiteReport:
    """QES eigenfunctions: closed form agrees with the numerics, zeros lie on
    the axes, and the tree parameters are admissible."""
    from .qes import QesSpec, classify, cross_check, qes_solve
    from .zeros import Box, census

    rep = SuiteReport("theorem2")
    spec = QesSpec(m, p, b)
    try:
        sols = qes_solve(spec)
    except Exception as exc:
        rep.error("closed form", exc)
        return rep
    rep.checks.append(Check("closed form", True, {"lambda": [s.lam for s in sols]}))
    for s in sols:
        def match(s=s):
            cc = cross_check(spec, s.k, tol=tol, strict=False)
            return cc.ok, cc.to_dict()

        def confined(s=s):
            c = census(spec.potential, s.lam, spec.parity, Box(*box), tol=tol, locate=False)
            return c.offaxis_count == 0 and c.consistent, {
                "k": s.k, "offaxis": c.offaxis_count, "consistent": c.consistent}

        def tree(s=s):
            m_tree, n_tree = classify(s)
            return True, {"k": s.k, "m_tree": m_tree, "n_tree": n_tree}

        rep.add(f"cross-check k={s.k}", match)
        rep.add(f"census k={s.k}", confined)
        rep.add(f"tree parameters k={s.k}", tree)
    return rep


def arg_interval(p: int) -> tuple[float, float]:
    """Open interval containing Arg a for the QES family with parity p."""
    return (0.0, math.pi / 2) if p == 1 else (-math.pi / 2, 0.0)


def corollary(m_max: int = 3, ps=(0, 1), bs=(-2.0, 0.0, 2.0), tol: float = 1e-6) -> SuiteReport:
    """QES instances agree with the shooting solver and g lies in its interval."""
    from .asymptotics import g
    from .qes import QesSpec, cross_check

    rep = SuiteReport("corollary")
    for m in range(m_max + 1):
        for p in ps:
            for b in bs:
                spec = QesSpec(m, p, float(b))
                for k in range(m + 1):
                    def match(spec=spec, k=k):
                        cc = cross_check(spec, k, tol=tol, strict=False)
                        return cc.ok, cc.to_dict()

                    rep.add(f"cross-check m={m} p={p} b={b:g} k={k}", match)

                def arg(m=m, p=p, b=b):
                    val = g(0, m, p, float(b))
                    lo, hi = arg_interval(p)
                    return lo < val < hi, {"m": m, "p": p, "b": float(b), "g": val,
                                           "interval": [lo, hi]}

                rep.add(f"arg m={m} p={p} b={b:g}", arg)
    return rep


TREE_COUNTS = {
    "rooted symmetric, 4 ends": 6,
    "double symmetric, 8 ends": 11,
    "d=4 topological": 2,
    "d=4 decorated": 3,
    "d=6 decorated": 5,
}


def trees() -> SuiteReport:
    from .linecomplex import exponential_complex, propagate_labels, symmetric_complexes, \
        validate_line_complex
    from .trees import count_filtered, enumerate_double_symmetric, enumerate_rooted_symmetric

    rep = SuiteReport("trees")
    got = {
        "rooted symmetric, 4 ends": lambda: len(enumerate_rooted_symmetric(4)),
        "double symmetric, 8 ends": lambda: len(enumerate_double_symmetric(8, False)),
        "d=4 topological": lambda: count_filtered(4),
        "d=4 decorated": lambda: count_filtered(4, decorated=True),
        "d=6 decorated": lambda: count_filtered(6, decorated=True),
    }
    for name, expected in TREE_COUNTS.items():
        rep.add(name, lambda name=name, expected=expected: (
            got[name]() == expected, {"expected": expected, "count": got[name]()}))
    rep.add("exponential line complex", lambda: (validate_line_complex(exponential_complex()).ok, {}))

    def sectors():
        cs = symmetric_complexes()
        ok = bool(cs)
        for L in cs:
            ok &= validate_line_complex(L).ok
            again = propagate_labels(L, {0: L.face_label[0]})
            ok &= again.face_label == L.face_label
        return ok, {"complexes": len(cs)}

    rep.add("12-sector line complexes", sectors)
    return rep


def verify_suite(name: str, **params) -> SuiteReport:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return {"theorem1": theorem1, "theorem2": theorem2, "corollary": corollary,
            "trees": trees}[name](**params)

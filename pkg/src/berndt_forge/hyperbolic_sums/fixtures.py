"""Exact-rational JSON fixtures for the fitted Sbar and S bases.

One file per (family, s) named ``<family>_<s>.json``.  Loading re-checks
the stored element against direct series summation at x = 3/10.

Regenerate with ``python3 -m berndt_forge.hyperbolic_sums.fixtures``.
"""

from __future__ import annotations

import argparse
import json
import os
import threading
import time
from fractions import Fraction
from importlib import resources
from pathlib import Path

from ..errors import FixtureError
from ..families import SumFamily
from ..numerics.core import _y_of_x, digits_to_bits, make_ctx
from ..numerics.evaluate import ZRingEvaluator
from ..numerics.series import sum_series_ctx
from ..zring.poly import PolyX, RatFunX
from ..zring.ring import ZRingElem

__all__ = [
    "SCHEMA",
    "ENV_VAR",
    "fixture_dir",
    "set_fixture_dir",
    "load_base",
    "save_base",
    "element_to_json",
    "element_from_json",
]

SCHEMA = "berndt-forge/1"
ENV_VAR = "BERNDT_FORGE_FIXTURES"
CHECK_X = Fraction(3, 10)
CHECK_DIGITS = 60
CHECK_TOL_DIGITS = 40

_lock = threading.Lock()
_override: Path | None = None


def _packaged_dir() -> Path:
    return Path(str(resources.files("berndt_forge") / "data" / "bases"))


def fixture_dir() -> Path:
    if _override is not None:
        return _override
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return _packaged_dir()


def set_fixture_dir(path) -> None:
    """Point fixture lookups at ``path`` (None restores the default)."""
    global _override
    from . import bases, reduce

    with _lock:
        _override = Path(path) if path is not None else None
    bases.clear_cache()
    reduce._ddy_power.cache_clear()


def _poly_to_json(p: PolyX) -> list[str]:
    return [str(c) for c in p.coeffs]


def _poly_from_json(items) -> PolyX:
    return PolyX(Fraction(c) for c in items)


def element_to_json(e: ZRingElem) -> list[dict]:
    out = []
    for (ev, evp, jets), c in e.sorted_items():
        out.append({
            "v": ev,
            "vp": evp,
            "jets": list(jets),
            "num": _poly_to_json(c.num),
            "den": _poly_to_json(c.den),
        })
    return out


def element_from_json(items) -> ZRingElem:
    terms = {}
    for t in items:
        key = (int(t["v"]), int(t["vp"]), tuple(int(j) for j in t["jets"]))
        terms[key] = RatFunX(_poly_from_json(t["num"]), _poly_from_json(t["den"]))
    return ZRingElem(terms)


def _family(family: str, s: int) -> SumFamily:
    if family == "Sbar":
        return SumFamily("Sbar", 2 * s + 1, 1)
    if family == "S":
        return SumFamily("S", 2 * s, 2)
    raise FixtureError(f"no fixtures for family {family!r}")


def _numeric_check(e: ZRingElem, fam: SumFamily) -> float:
    ctx = make_ctx(digits_to_bits(CHECK_DIGITS) + 32)
    ev = ZRingEvaluator(ctx, CHECK_X)
    want = sum_series_ctx(ctx, fam, _y_of_x(ctx, ev.x))
    got = ev(e)
    return float(abs(got - want) / max(abs(want), ctx.mpf(1)))


def path_for(family: str, s: int, directory=None) -> Path:
    return Path(directory or fixture_dir()) / f"{family}_{s}.json"


def load_base(family: str, s: int, directory=None, check: bool = True) -> ZRingElem | None:
    """The frozen element, or None when no fixture file exists."""
    path = path_for(family, s, directory)
    if not path.exists():
        return None
    try:
        data = json.loads(path.read_text())
    except (OSError, ValueError) as exc:
        raise FixtureError(f"unreadable fixture: {exc}", path) from exc
    if data.get("schema") != SCHEMA:
        raise FixtureError(f"unexpected schema {data.get('schema')!r}", path)
    if data.get("family") != family or data.get("s") != s:
        raise FixtureError("fixture header does not match its file name", path)
    elem = element_from_json(data["terms"])
    if check:
        err = _numeric_check(elem, _family(family, s))
        if err > 10.0 ** -CHECK_TOL_DIGITS:
            raise FixtureError(f"fixture fails series check (rel err {err:.3g})", path)
    return elem


def save_base(family: str, s: int, fit, directory) -> Path:
    fam = _family(family, s)
    data = {
        "schema": SCHEMA,
        "family": family,
        "s": s,
        "index": fam.p,
        "power": fam.m,
        "shape": fit.shape.describe(),
        "sigma_coeffs": [str(c) for c in fit.coeffs],
        "terms": element_to_json(fit.element),
        "certification": {
            "fit_digits": fit.digits,
            "fit_points": [str(x) for x in fit.fit_points],
            "held_out": [str(x) for x in fit.held_out],
            "max_rel_residual": fit.max_rel_residual,
        },
    }
    path = path_for(family, s, directory)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(data, indent=1) + "\n")
    return path


def generate(max_s: int, directory, families=("Sbar", "S"), force: bool = False, log=print) -> None:
    from .bases import fit_s2, fit_sbar

    for family in families:
        for s in range(1, max_s + 1):
            path = path_for(family, s, directory)
            if path.exists() and not force:
                continue
            t0 = time.time()
            fit = fit_sbar(s) if family == "Sbar" else fit_s2(s)
            save_base(family, s, fit, directory)
            log(f"{family} s={s}: dim {fit.shape.dimension}, {fit.digits} digits, "
                f"{time.time() - t0:.1f}s")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description="Fit and freeze the Sbar and S base fixtures.")
    parser.add_argument("--max-s", type=int, default=30)
    parser.add_argument("--out", default=str(_packaged_dir()))
    parser.add_argument("--family", choices=["Sbar", "S"], action="append")
    parser.add_argument("--force", action="store_true")
    args = parser.parse_args(argv)
    generate(args.max_s, args.out, tuple(args.family or ("Sbar", "S")), args.force)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

"""Baillie-PSW probable-prime tests, Lucas parameter selection and a
pseudoprime census, backed by a C++ core.

Integers of any size are accepted wherever n appears.
"""

from __future__ import annotations

import json
from typing import Optional, Sequence

from . import _core
from ._core import DomainError, InvalidModulus, PreconditionError

__all__ = [
    "DomainError",
    "InvalidModulus",
    "PreconditionError",
    "bpsw",
    "census",
    "compare_methods",
    "first_k",
    "is_probable_prime",
    "jacobi",
    "lemma_qr_residue",
    "lucas",
    "mod_pow",
    "select_params",
    "verify_certificate",
    "verify_theorem1",
    "witness",
]

_DEFAULT_CEILING = 10**8


def _num(x: int) -> str:
    if isinstance(x, bool) or not isinstance(x, int):
        raise TypeError(f"expected int, got {type(x).__name__}")
    return str(x)


def _ints(obj):
    # Report JSON carries integers as strings; give them back as ints.
    if isinstance(obj, dict):
        return {k: (_ints(v) if k not in ("method", "kind", "detail", "name", "status",
                                          "variant", "verdict", "error") else v)
                for k, v in obj.items()}
    if isinstance(obj, list):
        return [_ints(v) for v in obj]
    if isinstance(obj, str):
        try:
            return int(obj)
        except ValueError:
            return obj
    return obj


def is_probable_prime(n: int) -> bool:
    """Enhanced test with default options."""
    if n < 0:
        return False
    return _core.is_probable_prime(_num(n))


def bpsw(n: int, *, variant: str = "enhanced", method: str = "A*", sieve_bound: int = 997,
         seed: int = 0, skip_step1: bool = False,
         params: Optional[tuple[int, int]] = None) -> dict:
    """Full pipeline report as a dict (verdict, steps, certificate, params)."""
    pq = None if params is None else (_num(params[0]), _num(params[1]))
    raw = _core.run_pipeline(_num(n), variant, method, sieve_bound, seed, skip_step1, pq)
    return _ints(json.loads(raw))


def select_params(n: int, method: str = "A*", seed: int = 0) -> dict:
    """{'params': {...}} or {'certificate': {...}} or {'exhausted': count}."""
    return _ints(json.loads(_core.select_params(_num(n), method, seed)))


def lucas(n: int, P: int, Q: int, k: int) -> tuple[int, int, int]:
    """(U_k, V_k, Q^k) mod n."""
    u, v, q = _core.lucas_ladder(_num(n), _num(P), _num(Q), _num(k))
    return int(u), int(v), int(q)


def jacobi(a: int, n: int) -> int:
    return _core.jacobi(_num(a), _num(n))


def mod_pow(base: int, exponent: int, modulus: int) -> int:
    return int(_core.mod_pow(_num(base), _num(exponent), _num(modulus)))


def census(hi: int, *, lo: int = 3, method: str = "A*", kinds: str = "all", workers: int = 1,
           seed: int = 0, ceiling: int = _DEFAULT_CEILING) -> dict:
    """Counts per decade plus the pseudoprime lists for n in [lo, hi)."""
    return _core.census(lo, hi, method, kinds, workers, seed, ceiling)


def first_k(kind: str, k: int = 10, *, method: str = "A*", ceiling: int = _DEFAULT_CEILING,
            seed: int = 0) -> list[int]:
    return _core.first_k(kind, k, method, ceiling, seed)


def compare_methods(bound: int, methods: Sequence[str] = ("A", "A*", "B", "B*", "C", "D", "R"),
                    seed: int = 0) -> list[dict]:
    return _core.method_comparison(bound, list(methods), seed)


def witness(n: int, *, max_n: int = 10000, require_psp2: bool = True) -> Optional[tuple[int, int]]:
    w = _core.witness(_num(n), max_n, require_psp2)
    return None if w is None else (int(w[0]), int(w[1]))


def verify_theorem1(n: int, k: int) -> dict:
    return _core.verify_theorem1(_num(n), k)


def lemma_qr_residue(r: int) -> int:
    return int(_core.lemma_qr_residue(_num(r)))


def verify_certificate(cert: dict | str) -> tuple[bool, str]:
    """Accepts a certificate dict (as found in a bpsw() report) or its JSON."""
    if isinstance(cert, dict):
        cert = json.dumps(_strs(cert))
    return _core.verify_certificate(cert)


def _strs(obj):
    if isinstance(obj, dict):
        return {k: _strs(v) if k != "step" and k != "q_shift" else v for k, v in obj.items()}
    if isinstance(obj, list):
        return [_strs(v) for v in obj]
    if isinstance(obj, int) and not isinstance(obj, bool):
        return str(obj)
    return obj

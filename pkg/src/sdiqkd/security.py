"""Key-rate arithmetic for the one-way protocol under individual attacks.

Collaborating Bob and Eve guess at most three balanced functions of two bits
with one qubit, which bounds ``P_B + P_E <= (5 + sqrt 3) / 4``. A secret key
exists (Csiszar-Korner) when ``I(A:B) > I(A:E)``, i.e. above
``P_B = (5 + sqrt 3) / 8``.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass

from .tables import DataTable

SQRT3 = math.sqrt(3.0)
BOB_EVE_SUM_BOUND = (5.0 + SQRT3) / 4.0
THRESHOLD = (5.0 + SQRT3) / 8.0
P_QUANTUM = math.cos(math.pi / 8.0) ** 2
S_QUANTUM = 2.0 * math.sqrt(2.0)
# P_B below which the linear Eve bound exceeds 1
CLAMP_EDGE = (1.0 + SQRT3) / 4.0


def _check_prob(p, lo=0.0, hi=1.0, name="p"):
    if not lo <= p <= hi:
        raise ValueError(f"{name} = {p!r} outside [{lo}, {hi}]")


def binary_entropy(p: float) -> float:
    """Shannon entropy in bits, with ``0 log 0 = 0``."""
    _check_prob(p)
    if p == 0.0 or p == 1.0:
        return 0.0
    return -p * math.log2(p) - (1.0 - p) * math.log2(1.0 - p)


def mutual_information_bits(p_correct: float) -> float:
    """Per-symbol information ``1 - h(p)`` of a guess that is right w.p. ``p``."""
    return 1.0 - binary_entropy(p_correct)


def konig_bound(n: int, s: int) -> float:
    """Bound on guessing a random balanced function of n bits from s qubits."""
    if n < 1 or not 0 <= s <= n:
        raise ValueError(f"need n >= 1 and 0 <= s <= n, got n={n}, s={s}")
    return 0.5 * (1.0 + math.sqrt((2.0**s - 1.0) / (2.0**n - 1.0)))


def eve_guess_bound_raw(p_bob: float) -> float:
    """Unclamped ``(5 + sqrt 3)/4 - P_B``."""
    return BOB_EVE_SUM_BOUND - p_bob


def eve_guess_bound(p_bob: float) -> float:
    """Upper bound on Eve's average guessing probability given Bob's.

    Pairing ``P_BE(a0 xor a1) >= P_BE(a0) + P_BE(a1) - 1`` with the one-qubit
    bound on the three balanced functions gives
    ``P_B(a0) + P_E(a1) <= (5 + sqrt 3)/4`` and symmetrically; averaging
    yields the linear bound, clamped into ``[1/2, 1]``.
    """
    _check_prob(p_bob, 0.5, 1.0, "p_bob")
    return min(1.0, max(0.5, eve_guess_bound_raw(p_bob)))


def key_rate(p_bob: float) -> float:
    """Signed Csiszar-Korner rate ``I(A:B) - I(A:E)`` in bits per symbol."""
    _check_prob(p_bob, 0.5, 1.0, "p_bob")
    return mutual_information_bits(p_bob) - mutual_information_bits(eve_guess_bound(p_bob))


def is_secure(p_bob: float) -> bool:
    return p_bob > THRESHOLD


@dataclass
class SecurityReport:
    p_bob: float
    p_eve_bound: float
    p_eve_bound_raw: float
    i_ab: float
    i_ae: float
    key_rate: float
    nonneg_key_rate: float
    secure: bool
    threshold: float = THRESHOLD

    def to_json_dict(self) -> dict:
        d = asdict(self)
        d["constants"] = {
            "bob_eve_sum_bound": BOB_EVE_SUM_BOUND,
            "threshold": THRESHOLD,
            "p_quantum_optimum": P_QUANTUM,
        }
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())


def report_from_pb(p_bob: float) -> SecurityReport:
    """Assemble the report for Bob's RAC success probability.

    ``P_B < 1/2`` is accepted as raw data; Eve's bound is then 1 and the rate
    is non-positive.
    """
    p_bob = float(p_bob)
    _check_prob(p_bob, name="p_bob")
    raw = eve_guess_bound_raw(p_bob)
    p_eve = min(1.0, max(0.5, raw))
    i_ab = mutual_information_bits(p_bob)
    i_ae = mutual_information_bits(p_eve)
    rate = i_ab - i_ae
    return SecurityReport(
        p_bob=p_bob,
        p_eve_bound=p_eve,
        p_eve_bound_raw=raw,
        i_ab=i_ab,
        i_ae=i_ae,
        key_rate=rate,
        nonneg_key_rate=max(0.0, rate),
        secure=is_secure(p_bob),
    )


def security_report(t: DataTable) -> SecurityReport:
    from .rac import rac_success

    p = float(rac_success(t))
    # float round-off on tables at the edge of [0, 1]
    return report_from_pb(min(1.0, max(0.0, p)))

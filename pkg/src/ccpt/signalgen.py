"""Deterministic test-signal construction with seeded randomness.

Two presets reproduce the experiment inputs used throughout the test
suite: a 72-sample sum of three unit complex exponentials (hidden periods
36, 9, 36), and a 100-sample sum of a 5-periodic and a 7-periodic random
sequence (overall period 35, not a divisor of the length). Random samples
come from a named generator (PCG64) so runs are replayable from the seed.
"""

from dataclasses import dataclass, field

import numpy as np

from .ccps import ccps

RNG_ALGORITHM = "pcg64"

Y1_LENGTH = 72
Y2_LENGTH = 100
Y1_COMPONENTS = (
    # (cycles k, base period, phase, amplitude): amp * e^{j(2 pi k n / period + phase)}
    (10, 360, np.pi / 5, 1.0),
    (40, 360, np.pi / 4, 1.0),
    (50, 360, np.pi / 3, 1.0),
)


@dataclass(frozen=True)
class SignalSpec:
    """Recipe for a generated signal, serializable into output metadata."""

    kind: str
    length: int
    seed: int | None = None
    components: tuple[tuple, ...] = field(default_factory=tuple)

    def metadata(self) -> dict:
        return {
            "kind": self.kind,
            "length": self.length,
            "seed": self.seed,
            "components": [list(c) for c in self.components],
            "rng": RNG_ALGORITHM if self.seed is not None else None,
        }


def gen_custom_sum(components, length: int) -> np.ndarray:
    """Sum of complex exponentials amp * e^{j(2 pi k n / period + phase)}."""
    n = np.arange(length)
    x = np.zeros(length, dtype=complex)
    for k, period, phase, amplitude in components:
        x += amplitude * np.exp(1j * (2.0 * np.pi * k * n / period + phase))
    return x


def gen_y1() -> np.ndarray:
    """72-sample sum of 10/40/50 cycles-per-360 exponentials; period 36.

    The phase offsets ride inside the complex exponent: a phase written
    next to the oscillation argument is a rotation, not a real gain.
    """
    return gen_custom_sum(Y1_COMPONENTS, Y1_LENGTH)


def gen_y2(seed: int) -> np.ndarray:
    """100-sample sum of a 5-periodic and a 7-periodic random sequence.

    One period of each component is drawn from the standard complex
    normal (independent real and imaginary parts of variance 1/2), then
    tiled across the signal, the last repetition truncated; the sum has
    period lcm(5, 7) = 35, which does not divide 100.
    """
    rng = np.random.default_rng(seed)

    def one_period(p: int) -> np.ndarray:
        return (rng.standard_normal(p) + 1j * rng.standard_normal(p)) * np.sqrt(0.5)

    x21 = np.tile(one_period(5), Y2_LENGTH // 5)
    x22 = np.tile(one_period(7), -(-Y2_LENGTH // 7))[:Y2_LENGTH]
    return x21 + x22


def gen_tiled_ccps(p: int, k: int, length: int) -> np.ndarray:
    """Cosine-pair sequence of period p tiled (and truncated) to `length`."""
    return ccps(p, k).tiled(length)


def generate(spec: SignalSpec) -> np.ndarray:
    """Build the signal described by a SignalSpec."""
    if spec.kind == "preset-y1":
        return gen_y1()
    if spec.kind == "preset-y2":
        if spec.seed is None:
            raise ValueError("preset-y2 needs a seed")
        return gen_y2(spec.seed)
    if spec.kind == "tiled-ccps":
        (p, k) = spec.components[0][:2]
        return gen_tiled_ccps(int(p), int(k), spec.length)
    if spec.kind == "custom-sum":
        return gen_custom_sum(spec.components, spec.length)
    raise ValueError(f"unknown signal kind {spec.kind!r}")

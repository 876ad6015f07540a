"""Shared fixtures: one 512-bit context and refined roots for the built-ins."""

import pytest

from stefbench import BUILTINS, PrecisionContext, refine_root


@pytest.fixture(scope="session")
def ctx():
    return PrecisionContext(512)


@pytest.fixture(scope="session")
def roots(ctx):
    """Fully refined roots of the seven built-ins, keyed by name."""
    return {
        name: refine_root(f, ctx.mpf(f.reference_root), ctx)
        for name, f in BUILTINS.items()
    }


@pytest.fixture(scope="session")
def close(ctx):
    """Comparison helper: |a - b| within a few units of rounding at scale."""

    def _close(a, b, ulps=8):
        a = ctx.mpf(a)
        b = ctx.mpf(b)
        scale = max(abs(a), abs(b), ctx.eps)
        return abs(a - b) <= ulps * ctx.eps * scale

    return _close

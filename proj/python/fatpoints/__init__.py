"""Maximal-rank decisions and certificates for generic unions of fat points.

Thin convenience layer over the native module: structured values cross the
boundary as the same JSON documents the CLI persists.
"""

import json

from fatpoints import _core

DEFAULT_PRIME = 2147483647


def configuration(N, a=1, free_mults=(), divisor_mults=()):
    """Build a configuration document."""
    components = [
        {"kind": "divisor_point", "m": int(m)} for m in divisor_mults
    ] + [{"kind": "free_point", "m": int(m)} for m in free_mults]
    return {
        "schema": "fatpoints/configuration/1",
        "N": int(N),
        "a": int(a),
        "components": components,
    }


def dim(config, d, trials=2, prime=DEFAULT_PRIME, seed=0):
    """Verdict dict for a configuration at degree d."""
    return json.loads(_core.dim(json.dumps(config), d, trials, prime, seed))


def certify(config, d, trials=2, prime=DEFAULT_PRIME, seed=0,
            strategy="smallest-first", base_degree=-1):
    """Certificate dict, or a certify_failure dict when the claim loses."""
    return json.loads(
        _core.certify(json.dumps(config), d, trials, prime, seed, strategy,
                      base_degree))


def counterexample(p, d, seed=0):
    """Characteristic-p failure report dict."""
    return json.loads(_core.counterexample(p, d, seed))


def plan(m, n):
    """Induction schedule dict."""
    return json.loads(_core.plan(m, n))


def formal_corpus(seeds=100, seed=0, mutate=False):
    """Deformation corpus summary dict; `seeds` is the corpus size."""
    return json.loads(_core.formal_corpus(seeds, seed, mutate))


def make_candidate(config, d):
    """Pad a configuration into a candidate document."""
    return json.loads(_core.make_candidate(json.dumps(config), d))


def config_degree(config):
    """Total degree (length) of a configuration document."""
    return _core.config_degree(json.dumps(config))


def proj_h0(N, d):
    """h0 of O(d) on P^N."""
    return _core.proj_h0(N, d)

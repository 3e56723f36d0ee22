"""Campaign configuration (TOML).

Grammar::

    N = 64                      # chain length, >= 2 * max degree + 2
    band_guard = 8              # extra frequencies kept below the zbar-chain
    seed = 0                    # RNG seed for randomised checks
    samples = 100               # random inputs per identity
    suites = ["defect", ...]    # optional; default is every suite

    [examples]
    lambda = [0.5, 0.0]         # point for the proper-containment example
    a = [0.5, 0.0]              # kernel point for the cyclic S + S* example

    [tolerances]                # optional per-check overrides
    defect = 1e-9

    [[inner]]                   # one table per inner function
    name = "mobius_half"
    constant = [1.0, 0.0]       # optional, default 1
    zeros = [[0.5, 0.0]]
"""
from __future__ import annotations

import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .blaschke import BlaschkeProduct

SUITE_NAMES = ("projections", "model_space", "dual_formula", "defect", "blocks", "flip",
               "similarity", "equivalence", "subspaces", "examples")

DEFAULT_TOLERANCES = {
    "projections": 1e-9,
    "splitting_identities": 1e-12,
    "model_basis": 1e-10,
    "reproducing_kernel": 1e-8,
    "conjugation": 1e-9,
    "ubar_model_space": 1e-8,
    "dual_formula": 1e-9,
    "dual_tt": 1e-9,
    "block_compression": 1e-9,
    "norm": 1e-12,
    "defect_identity": 1e-9,
    "conjugation_symmetry": 1e-8,
    "block_form": 1e-9,
    "flip": 1e-12,
    "composite_unitary": 1e-12,
    "similarity": 1e-12,
    "unitary_certificate": 1e-10,
    "intertwine": 1e-9,
    "invariance": 1e-8,
    "char_fn": 1e-3,
    "containment": 1e-8,
    "membership": 1e-6,
    "properness": 0.01,
    "split": 1e-8,
}


class ConfigError(ValueError):
    pass


@dataclass
class InnerSpec:
    name: str
    u: BlaschkeProduct


@dataclass
class CampaignConfig:
    N: int = 64
    band_guard: int = 8
    seed: int = 0
    samples: int = 100
    inner: list[InnerSpec] = field(default_factory=list)
    tolerances: dict[str, float] = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))
    suites: list[str] = field(default_factory=lambda: list(SUITE_NAMES))
    lam: complex = 0.5
    a: complex = 0.5

    def tol(self, key: str) -> float:
        return self.tolerances[key]

    def validate(self) -> "CampaignConfig":
        if not self.inner:
            raise ConfigError("at least one [[inner]] function is required")
        deg = max(s.u.degree for s in self.inner)
        if self.N < max(2, 2 * deg + 2):
            raise ConfigError(f"N = {self.N} too small for degree {deg} (need >= {2 * deg + 2})")
        if self.band_guard < 0 or self.samples < 1:
            raise ConfigError("band_guard must be >= 0 and samples >= 1")
        for k, v in self.tolerances.items():
            if not v > 0:
                raise ConfigError(f"tolerance {k} must be positive")
        unknown = [s for s in self.suites if s not in SUITE_NAMES]
        if unknown:
            raise ConfigError(f"unknown suites: {unknown}")
        for z in (self.lam, self.a):
            if not 0 < abs(z) < 1:
                raise ConfigError("example points must satisfy 0 < |z| < 1")
        return self


def default_inner() -> list[InnerSpec]:
    return [
        InnerSpec("z", BlaschkeProduct.power(1)),
        InnerSpec("z2", BlaschkeProduct.power(2)),
        InnerSpec("mobius_half", BlaschkeProduct.mobius(0.5)),
        InnerSpec("mobius_i_half", BlaschkeProduct.mobius(0.5j)),
        InnerSpec("pair_half", BlaschkeProduct(1.0, (0.5, -0.5))),
    ]


def default_config() -> CampaignConfig:
    return CampaignConfig(inner=default_inner()).validate()


def _complex(x: Any, what: str) -> complex:
    try:
        if isinstance(x, (int, float)):
            return complex(x)
        re, im = x
        return complex(float(re), float(im))
    except (TypeError, ValueError) as e:
        raise ConfigError(f"{what}: expected [re, im], got {x!r}") from e


def parse_config(data: dict[str, Any]) -> CampaignConfig:
    known = {"N", "band_guard", "seed", "samples", "suites", "examples", "tolerances", "inner"}
    extra = set(data) - known
    if extra:
        raise ConfigError(f"unknown keys: {sorted(extra)}")
    cfg = CampaignConfig()
    try:
        cfg.N = int(data.get("N", cfg.N))
        cfg.band_guard = int(data.get("band_guard", cfg.band_guard))
        cfg.seed = int(data.get("seed", cfg.seed))
        cfg.samples = int(data.get("samples", cfg.samples))
    except (TypeError, ValueError) as e:
        raise ConfigError(str(e)) from e
    if "suites" in data:
        cfg.suites = [str(s) for s in data["suites"]]
    ex = data.get("examples", {})
    if "lambda" in ex:
        cfg.lam = _complex(ex["lambda"], "examples.lambda")
    if "a" in ex:
        cfg.a = _complex(ex["a"], "examples.a")
    for k, v in data.get("tolerances", {}).items():
        if k not in DEFAULT_TOLERANCES:
            raise ConfigError(f"unknown tolerance key {k!r}")
        try:
            cfg.tolerances[k] = float(v)
        except (TypeError, ValueError) as e:
            raise ConfigError(f"tolerance {k}: {e}") from e
    inner = data.get("inner")
    if inner is None:
        cfg.inner = default_inner()
    else:
        for i, t in enumerate(inner):
            try:
                u = BlaschkeProduct.from_descriptor(t)
            except (TypeError, ValueError, KeyError) as e:
                raise ConfigError(f"inner[{i}]: {e}") from e
            cfg.inner.append(InnerSpec(str(t.get("name", f"u{i}")), u))
    return cfg.validate()


def load_config(path: str | Path) -> CampaignConfig:
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except (OSError, tomllib.TOMLDecodeError) as e:
        raise ConfigError(f"cannot read {path}: {e}") from e
    return parse_config(data)

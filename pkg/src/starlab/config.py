"""Run configuration for the command line front end.

Configs are flat ``key = value`` text files ('#' starts a comment).
Command line flags override file values, which override the defaults.

Recognized keys:

    n          positive parity integer (default 2)
    grid       inner quadrature resolution as POLARxAZIMUTH (default 16x32)
    bandlimit  max harmonic degree for generated functions (default 4)
    seed       RNG seed for generated inputs (default 1234)
    variant    global | restricted | generalized | partial-XYZ (XYZ bits)
    amplitude  amplitude tag for the generalized variant (default jacobian)
    eps_sign   boundary threshold on |dot| (default 1e-12)
    eps_det    singular-Jacobian threshold on 1 - det^2 (default 1e-10)
    out        output directory (default .)
    k_list     comma separated k values for the limit scan (default 1,2,4,8,16)
    n_list     comma separated n values for the verify suite (default 1,2,3,4)
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields, replace
from typing import Optional, Tuple

from .kernels import AMPLITUDES, PARTIAL_LABELS
from .sphere_geometry import EPS_DET, EPS_SIGN

__all__ = ["RunConfig", "ConfigError", "parse_config_file", "build_config"]

_VARIANTS = ("global", "restricted", "generalized")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    n: int = 2
    n_polar: int = 16
    n_azimuth: int = 32
    bandlimit: int = 4
    seed: int = 1234
    variant: str = "global"
    amplitude: str = "jacobian"
    eps_sign: float = EPS_SIGN
    eps_det: float = EPS_DET
    out_dir: str = "."
    k_list: Tuple[int, ...] = (1, 2, 4, 8, 16)
    n_list: Tuple[int, ...] = (1, 2, 3, 4)

    @property
    def grid_shape(self) -> Tuple[int, int]:
        return (self.n_polar, self.n_azimuth)

    def variant_kind(self) -> Tuple[str, Optional[str]]:
        """Split the variant string into (engine kind, partial domain)."""
        if self.variant.startswith("partial-"):
            return "partial", self.variant.split("-", 1)[1]
        if self.variant == "restricted":
            return "restricted_even", None
        return self.variant, None

    def validate(self) -> "RunConfig":
        if self.n < 1:
            raise ConfigError("n must be a positive integer")
        if self.n_polar < 1:
            raise ConfigError("grid polar count must be >= 1")
        if self.n_azimuth < 2 or self.n_azimuth % 2 != 0:
            raise ConfigError("grid azimuth count must be even and >= 2 "
                              "(antipodal symmetry)")
        if self.bandlimit < 0:
            raise ConfigError("bandlimit must be >= 0")
        if self.eps_sign <= 0 or self.eps_det <= 0:
            raise ConfigError("tolerances must be positive")
        kind, domain = self.variant_kind()
        if kind == "partial":
            if domain not in PARTIAL_LABELS:
                raise ConfigError(f"unknown partial domain {domain!r}; "
                                  "expected bits 000..111")
        elif kind not in ("global", "restricted_even", "generalized"):
            raise ConfigError(f"unknown variant {self.variant!r}")
        if self.amplitude not in AMPLITUDES:
            raise ConfigError(f"unknown amplitude {self.amplitude!r}; "
                              f"known: {', '.join(sorted(AMPLITUDES))}")
        if not self.k_list or any(k < 1 for k in self.k_list):
            raise ConfigError("k_list must contain positive integers")
        if not self.n_list or any(n < 1 for n in self.n_list):
            raise ConfigError("n_list must contain positive integers")
        return self


def _parse_grid(text: str) -> Tuple[int, int]:
    parts = text.lower().replace(" ", "").split("x")
    if len(parts) != 2:
        raise ConfigError(f"grid must look like 16x32, got {text!r}")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise ConfigError(f"grid must look like 16x32, got {text!r}") from None


def _parse_int_list(text: str) -> Tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in text.replace(" ", "").split(",") if tok)
    except ValueError:
        raise ConfigError(f"expected comma separated integers, got {text!r}") from None


def parse_config_file(path) -> dict:
    """Read a flat key = value file into a raw string dict."""
    raw = {}
    with open(path) as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{line_no}: expected key = value")
            key, value = (part.strip() for part in line.split("=", 1))
            if not key or not value:
                raise ConfigError(f"{path}:{line_no}: expected key = value")
            raw[key] = value
    return raw


_KEY_PARSERS = {
    "n": ("n", int),
    "grid": ("grid", _parse_grid),
    "bandlimit": ("bandlimit", int),
    "seed": ("seed", int),
    "variant": ("variant", str),
    "amplitude": ("amplitude", str),
    "eps_sign": ("eps_sign", float),
    "eps_det": ("eps_det", float),
    "out": ("out_dir", str),
    "k_list": ("k_list", _parse_int_list),
    "n_list": ("n_list", _parse_int_list),
}


def build_config(file_path=None, **overrides) -> RunConfig:
    """Defaults, then file values, then keyword overrides (from flags).

    Overrides use RunConfig field names; a "grid" override may be either
    a (polar, azimuth) pair or a "PxA" string.
    """
    values = {}
    if file_path is not None:
        raw = parse_config_file(file_path)
        for key, text in raw.items():
            if key not in _KEY_PARSERS:
                raise ConfigError(f"unknown config key {key!r}")
            name, parse = _KEY_PARSERS[key]
            try:
                values[name] = parse(text)
            except ConfigError:
                raise
            except ValueError:
                raise ConfigError(f"bad value for {key!r}: {text!r}") from None
    for key, val in overrides.items():
        if val is None:
            continue
        values[key] = val
    grid = values.pop("grid", None)
    if grid is not None:
        if isinstance(grid, str):
            grid = _parse_grid(grid)
        values["n_polar"], values["n_azimuth"] = grid
    known = {f.name for f in fields(RunConfig)}
    unknown = set(values) - known
    if unknown:
        raise ConfigError(f"unknown config fields: {sorted(unknown)}")
    return RunConfig(**values).validate()

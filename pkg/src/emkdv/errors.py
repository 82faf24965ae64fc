"""Exception hierarchy. Every error carries the module/operation that raised it
and a diagnostics dict, so the CLI can serialise failures as JSON."""

from __future__ import annotations

from typing import Any


class EmkdvError(Exception):
    exit_code = 4
    module = "emkdv"

    def __init__(self, message: str, operation: str = "", **diagnostics: Any):
        super().__init__(message)
        self.operation = operation
        self.diagnostics = diagnostics

    def to_dict(self) -> dict:
        return {
            "error": type(self).__name__,
            "module": self.module,
            "operation": self.operation,
            "message": str(self),
            "diagnostics": {k: _plain(v) for k, v in self.diagnostics.items()},
        }


def _plain(v):
    # numpy scalars and complex values are not JSON-native
    if isinstance(v, complex):
        return [v.real, v.imag]
    if hasattr(v, "item"):
        v = v.item()
        return _plain(v)
    return v


class ConfigError(EmkdvError):
    exit_code = 2
    module = "harness_cli"


class IoFailure(EmkdvError):
    exit_code = 4
    module = "harness_cli"


class DiscreteSpectrumPresent(EmkdvError):
    exit_code = 3
    module = "spectral_scattering"


class _Scattering(EmkdvError):
    module = "spectral_scattering"


class NonDecayingDatum(_Scattering):
    pass


class IntegratorFailure(_Scattering):
    pass


class UnitarityViolation(_Scattering):
    pass


class InconclusiveWinding(_Scattering):
    pass


class OutOfRange(_Scattering):
    pass


class _Asymptotics(EmkdvError):
    module = "oscillatory_asymptotics"


class WrongRegion(_Asymptotics):
    pass


class MissingScattering(_Asymptotics):
    pass


class QuadratureFailure(_Asymptotics):
    pass


class ZeroReflection(_Asymptotics):
    pass


class _Painleve(EmkdvError):
    module = "painleve_sector"


class SingularSystem(_Painleve):
    pass


class TruncationTooSmall(_Painleve):
    pass


class GridTooCoarse(_Painleve):
    pass


class _Pde(EmkdvError):
    module = "pde_reference"


class BlowUp(_Pde):
    pass


class BoundaryContamination(_Pde):
    pass

# Copyright 2026 The sobolev-lab Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Python front end for the native Sobolev-constant laboratory.

Model, function and kernel specs are plain dicts with the same shape as the
JSON configs accepted by the sobolev_lab command-line tool.
"""

import json as _json

import numpy as _np

from . import _sobolev_lab as _core
from ._sobolev_lab import ContractError, DomainError, NumericalError, SchemaError, format_double

__all__ = [
    "ContractError",
    "DomainError",
    "NumericalError",
    "SchemaError",
    "bregman",
    "canonical_model",
    "check_ids",
    "estimate",
    "format_double",
    "run",
    "run_check",
    "schur_q",
    "spectral_gap",
]


def _dump(spec):
    return _json.dumps(spec)


def canonical_model(model):
    return _json.loads(_core.canonical_model(_dump(model)))


def spectral_gap(model, k=1):
    return _core.spectral_gap(_dump(model), k)


def estimate(model, f, k=1, restarts=32, iters=2000, seed=0):
    return _json.loads(_core.estimate(_dump(model), _dump(f), k, restarts, iters, seed))


def check_ids(default_only=False):
    return list(_core.check_ids(default_only))


def run_check(check_id, seed=0, trials=0):
    return _json.loads(_core.run_check(check_id, seed, trials))


def run(config, seed=None, out_dir="", checks=()):
    """Run a config as the CLI would. Returns (exit_code, report, csv, summary)."""
    code, report, csv, summary = _core.run(_dump(config), seed, str(out_dir), list(checks))
    return code, (_json.loads(report) if report else None), csv, summary


def bregman(f, rho, sigma, epsilon=0.0):
    return _core.bregman(_dump(f), _np.asarray(rho, dtype=complex), _np.asarray(sigma, dtype=complex), epsilon)


def schur_q(kernel, rho, a):
    return _core.schur_q(_dump(kernel), _np.asarray(rho, dtype=complex), _np.asarray(a, dtype=complex))

"""
Exact decision procedures for topologically 𝐮_𝕀-torsion elements of the
circle group.

:organization: torsionkit developers
"""

import logging

from . import conditions, expansion, ideals, intsets, scale, verifier
from .conditions import Decision, TorsionContext, decide
from .expansion import circle_norm, eval_with_tail, extract_digits
from .ideals import density, fin, summable, wave_gamma
from .scale import AffineRatio, ConstantRatio, PiecewiseRatio
from .verdict import Verdict
from .verifier import exception_set, run_verification
from .version import __version__, VERSION

# Enable default NullHandler to prevent "No handlers could be found for logger"
logging.getLogger(__name__).addHandler(logging.NullHandler())

__all__ = [
    "AffineRatio",
    "circle_norm",
    "conditions",
    "ConstantRatio",
    "decide",
    "Decision",
    "density",
    "eval_with_tail",
    "exception_set",
    "expansion",
    "extract_digits",
    "fin",
    "ideals",
    "intsets",
    "PiecewiseRatio",
    "run_verification",
    "scale",
    "summable",
    "TorsionContext",
    "Verdict",
    "verifier",
    "wave_gamma",
]

__license__ = """
Copyright 2024 torsionkit developers

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
"""

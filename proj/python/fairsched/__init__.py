# Copyright 2026 The fairsched Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#  http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Python access to the fairsched simulator."""

import json

from . import _core
from ._core import ConfigError, derive_seed, temperature

__all__ = ["ConfigError", "derive_seed", "run", "temperature"]


def run(config=None, policy="drf", seed=1, run_index=0, audit=False):
    """Simulate one policy on one seed.

    ``config`` is a dict in the CLI's JSON config format. Returns a dict with
    ``summary``, ``usage`` rows of ``[time, *allocated]`` and ``decisions``.
    """
    text = json.dumps(config or {})
    return json.loads(_core.run_cell(text, policy, seed, run_index, audit))

# Copyright 2026 The varlab Authors
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

"""Square-variation laboratory for orthonormal systems.

Thin Python surface over the C++ core: grids and sampled functions,
orthonormal systems and Haar rotations, the exact V^r operator,
Luxemburg norms and the bounded/tail split, the admissible mass
decomposition, covering/packing estimates, and the seeded experiment
studies.
"""

from ._core import *  # noqa: F401,F403
from ._core import __all__ as _core_all

__all__ = list(_core_all)
__version__ = "0.1.0"

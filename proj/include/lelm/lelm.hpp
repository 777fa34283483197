// Copyright 2026 The lelm-bell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "lelm/core.hpp"
#include "lelm/fock.hpp"
#include "lelm/bell_set.hpp"
#include "lelm/detector.hpp"
#include "lelm/symmetry.hpp"
#include "lelm/polynomial.hpp"
#include "lelm/proof.hpp"
#include "lelm/feasibility.hpp"
#include "lelm/povm.hpp"
#include "lelm/nogo.hpp"
#include "lelm/report.hpp"

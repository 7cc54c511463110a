// Copyright 2026 The qcnn-sim Authors
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

#include "qcnn/baseline.hpp"
#include "qcnn/core/circuit_plan.hpp"
#include "qcnn/core/frontier.hpp"
#include "qcnn/core/gates.hpp"
#include "qcnn/core/pure_state.hpp"
#include "qcnn/core/sampling.hpp"
#include "qcnn/dataset.hpp"
#include "qcnn/encoding.hpp"
#include "qcnn/errors.hpp"
#include "qcnn/network.hpp"
#include "qcnn/parallel.hpp"
#include "qcnn/pgm.hpp"
#include "qcnn/training.hpp"

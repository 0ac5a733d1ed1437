// Copyright (c) 2026 The treedist authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "treedist/errors.hpp"
#include "treedist/forests.hpp"
#include "treedist/graph.hpp"
#include "treedist/io.hpp"
#include "treedist/linalg.hpp"
#include "treedist/matrix.hpp"
#include "treedist/minors.hpp"
#include "treedist/oracle.hpp"
#include "treedist/rational.hpp"
#include "treedist/verify.hpp"
#include "treedist/version.hpp"

// Copyright 2026 The gridsense Authors
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

#ifndef GRIDSENSE_QUAD_HPP
#define GRIDSENSE_QUAD_HPP

// Quad-precision instantiation support. Needs GNU extensions and libquadmath.
#include <boost/multiprecision/complex128.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/float128.hpp>

#include "gridsense/scalar.hpp"

namespace gridsense {

using quad = boost::multiprecision::float128;

template <>
struct complex_of<quad> {
    using type = boost::multiprecision::complex128;
};

}  // namespace gridsense

#endif

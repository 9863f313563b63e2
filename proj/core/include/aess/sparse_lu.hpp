// Copyright 2026 The aess Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <memory>

#include "aess/linalg.hpp"

namespace aess {

/// Sparse LU factorization of (A - shift I) backed by UMFPACK. Real matrices
/// are factored in real arithmetic; complex right-hand sides are then solved
/// as two real systems.
class ShiftedLu {
 public:
  ShiftedLu(const RealSparse& a, double shift);
  ShiftedLu(const ComplexSparse& a, cplx shift);
  ~ShiftedLu();
  ShiftedLu(ShiftedLu&&) noexcept;
  ShiftedLu& operator=(ShiftedLu&&) noexcept;
  ShiftedLu(const ShiftedLu&) = delete;
  ShiftedLu& operator=(const ShiftedLu&) = delete;

  Index dim() const;
  /// x = (A - shift)^{-1} b
  CVec solve(const CVec& b) const;
  /// x = (A - shift)^{-H} b
  CVec solve_adjoint(const CVec& b) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace aess

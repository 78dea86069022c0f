#pragma once

#include <cstddef>
#include <span>

#include "corrdiff/lattice.hpp"

namespace corrdiff {

/// Owning wrapper around a 1D complex FFTW plan with its own aligned buffers.
/// Forward uses exp(-2*pi*i*k*m/n), Backward exp(+2*pi*i*k*m/n); neither scales.
/// Plans are created with FFTW_ESTIMATE so results are reproducible run to run.
class FftPlan {
 public:
  enum class Direction { Forward, Backward };

  FftPlan(std::size_t n, Direction dir);
  ~FftPlan();
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;
  FftPlan(FftPlan&& other) noexcept;
  FftPlan& operator=(FftPlan&& other) noexcept;

  std::size_t size() const { return n_; }
  std::span<cplx> input();
  std::span<const cplx> output() const;
  void execute();

  /// Copies `in` (zero-padded to size) into the input buffer, runs, and returns output.
  std::span<const cplx> run(std::span<const cplx> in);

 private:
  void release();

  std::size_t n_ = 0;
  void* in_ = nullptr;
  void* out_ = nullptr;
  void* plan_ = nullptr;
};

std::size_t next_pow2(std::size_t n);

}  // namespace corrdiff

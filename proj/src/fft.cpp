#include "corrdiff/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstring>
#include <mutex>

#include "corrdiff/error.hpp"

namespace corrdiff {

namespace {
// FFTW's planner is not reentrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

FftPlan::FftPlan(std::size_t n, Direction dir) : n_(n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "FFT size must be positive");
  std::lock_guard lock(planner_mutex());
  in_ = fftw_malloc(sizeof(fftw_complex) * n);
  out_ = fftw_malloc(sizeof(fftw_complex) * n);
  plan_ = fftw_plan_dft_1d(static_cast<int>(n), static_cast<fftw_complex*>(in_),
                           static_cast<fftw_complex*>(out_),
                           dir == Direction::Forward ? FFTW_FORWARD : FFTW_BACKWARD,
                           FFTW_ESTIMATE);
  if (!plan_) {
    release();
    throw Error(ErrorCode::InvalidArgument, "FFTW plan creation failed");
  }
}

FftPlan::~FftPlan() { release(); }

FftPlan::FftPlan(FftPlan&& other) noexcept
    : n_(other.n_), in_(other.in_), out_(other.out_), plan_(other.plan_) {
  other.in_ = other.out_ = other.plan_ = nullptr;
  other.n_ = 0;
}

FftPlan& FftPlan::operator=(FftPlan&& other) noexcept {
  if (this != &other) {
    release();
    n_ = other.n_;
    in_ = other.in_;
    out_ = other.out_;
    plan_ = other.plan_;
    other.in_ = other.out_ = other.plan_ = nullptr;
    other.n_ = 0;
  }
  return *this;
}

void FftPlan::release() {
  std::lock_guard lock(planner_mutex());
  if (plan_) fftw_destroy_plan(static_cast<fftw_plan>(plan_));
  if (in_) fftw_free(in_);
  if (out_) fftw_free(out_);
  plan_ = in_ = out_ = nullptr;
}

std::span<cplx> FftPlan::input() { return {static_cast<cplx*>(in_), n_}; }
std::span<const cplx> FftPlan::output() const { return {static_cast<const cplx*>(out_), n_}; }

void FftPlan::execute() { fftw_execute(static_cast<fftw_plan>(plan_)); }

std::span<const cplx> FftPlan::run(std::span<const cplx> in) {
  auto buf = input();
  const std::size_t m = std::min(in.size(), n_);
  std::copy_n(in.begin(), m, buf.begin());
  std::fill(buf.begin() + static_cast<std::ptrdiff_t>(m), buf.end(), cplx{});
  execute();
  return output();
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace corrdiff

#pragma once
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include <fftw3.h>

namespace nls {

using cplx = std::complex<double>;

template <class T>
struct fftw_allocator {
  using value_type = T;
  fftw_allocator() = default;
  template <class U>
  fftw_allocator(const fftw_allocator<U>&) {}
  T* allocate(std::size_t n) { return static_cast<T*>(fftw_malloc(n * sizeof(T))); }
  void deallocate(T* p, std::size_t) { fftw_free(p); }
  template <class U>
  bool operator==(const fftw_allocator<U>&) const { return true; }
};

using cvec = std::vector<cplx, fftw_allocator<cplx>>;
using rvec = std::vector<double>;

// periodic box [-L/2, L/2)^dim, row-major storage (last axis fastest)
struct Grid {
  int dim = 3;
  std::array<int, 3> n{1, 1, 1};
  std::array<double, 3> box{0, 0, 0};

  static Grid line(int n, double L);
  static Grid cube(int n, double L);

  std::size_t size() const { return std::size_t(n[0]) * n[1] * n[2]; }
  double h(int ax) const { return box[ax] / n[ax]; }
  double cell_volume() const;
  double coord(int ax, int i) const { return -0.5 * box[ax] + i * h(ax); }
  double wavenumber(int ax, int i) const {
    const int m = (i > n[ax] / 2) ? i - n[ax] : i;
    return 2.0 * M_PI * m / box[ax];
  }
  bool operator==(const Grid& o) const { return dim == o.dim && n == o.n && box == o.box; }
};

// FFTW plan set for one grid; forward is the unnormalized DFT, backward
// applies the 1/N factor. plans are created once with FFTW_ESTIMATE so the
// algorithm choice (and hence rounding) is reproducible run to run.
class Fft {
 public:
  explicit Fft(const Grid& g);
  ~Fft();
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  const Grid& grid() const { return g_; }
  void forward(const cplx* in, cplx* out) const;
  void backward(const cplx* in, cplx* out) const;
  void forward_ip(cplx* a) const;
  void backward_ip(cplx* a) const;

 private:
  Grid g_;
  cvec buf_, buf2_;
  fftw_plan fwd_ = nullptr, bwd_ = nullptr, fwd_ip_ = nullptr, bwd_ip_ = nullptr;
};

// process-wide plan cache keyed by grid shape
const Fft& fft_for(const Grid& g);

// shortest periodic representative of a displacement, in [-L/2, L/2) so the
// wrap matches the half-open span of the grid coordinates themselves
inline double minimal_image(double d, double L) {
  return d - L * std::floor(d / L + 0.5);
}

}  // namespace nls

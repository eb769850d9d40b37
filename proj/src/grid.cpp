#include "nls/grid.hpp"

#include <map>
#include <memory>
#include <sstream>

namespace nls {

Grid Grid::line(int n, double L) {
  Grid g;
  g.dim = 1;
  g.n = {n, 1, 1};
  g.box = {L, 1, 1};
  return g;
}

Grid Grid::cube(int n, double L) {
  Grid g;
  g.dim = 3;
  g.n = {n, n, n};
  g.box = {L, L, L};
  return g;
}

double Grid::cell_volume() const {
  double v = 1;
  for (int a = 0; a < dim; ++a) v *= h(a);
  return v;
}

Fft::Fft(const Grid& g) : g_(g) {
  buf_.resize(g.size());
  buf2_.resize(g.size());
  auto* in = reinterpret_cast<fftw_complex*>(buf_.data());
  auto* out = reinterpret_cast<fftw_complex*>(buf2_.data());
  if (g.dim == 1) {
    fwd_ = fftw_plan_dft_1d(g.n[0], in, out, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_1d(g.n[0], in, out, FFTW_BACKWARD, FFTW_ESTIMATE);
    fwd_ip_ = fftw_plan_dft_1d(g.n[0], in, in, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd_ip_ = fftw_plan_dft_1d(g.n[0], in, in, FFTW_BACKWARD, FFTW_ESTIMATE);
  } else {
    fwd_ = fftw_plan_dft_3d(g.n[0], g.n[1], g.n[2], in, out, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_3d(g.n[0], g.n[1], g.n[2], in, out, FFTW_BACKWARD, FFTW_ESTIMATE);
    fwd_ip_ = fftw_plan_dft_3d(g.n[0], g.n[1], g.n[2], in, in, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd_ip_ = fftw_plan_dft_3d(g.n[0], g.n[1], g.n[2], in, in, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
}

Fft::~Fft() {
  for (fftw_plan p : {fwd_, bwd_, fwd_ip_, bwd_ip_})
    if (p) fftw_destroy_plan(p);
}

void Fft::forward(const cplx* in, cplx* out) const {
  fftw_execute_dft(in == out ? fwd_ip_ : fwd_,
                   reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

void Fft::backward(const cplx* in, cplx* out) const {
  fftw_execute_dft(in == out ? bwd_ip_ : bwd_,
                   reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
  const double s = 1.0 / double(g_.size());
  for (std::size_t i = 0; i < g_.size(); ++i) out[i] *= s;
}

void Fft::forward_ip(cplx* a) const { forward(a, a); }
void Fft::backward_ip(cplx* a) const { backward(a, a); }

const Fft& fft_for(const Grid& g) {
  static std::map<std::string, std::unique_ptr<Fft>> cache;
  std::ostringstream key;
  key << g.dim << ':' << g.n[0] << ',' << g.n[1] << ',' << g.n[2] << ':' << g.box[0] << ','
      << g.box[1] << ',' << g.box[2];
  auto& slot = cache[key.str()];
  if (!slot) slot = std::make_unique<Fft>(g);
  return *slot;
}

}  // namespace nls

// Copyright 2026 The netobliv Authors
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

#include "netobliv/algorithms/fft.hpp"

#include <complex>
#include <numbers>

namespace netobliv {

namespace {

std::uint64_t bit_reverse(std::uint64_t x, unsigned bits) {
  std::uint64_t y = 0;
  for (unsigned b = 0; b < bits; ++b) y |= ((x >> b) & 1u) << (bits - 1 - b);
  return y;
}

std::uint64_t bits_of(std::uint64_t w, unsigned lo, unsigned count) {
  return (w >> lo) & ((std::uint64_t{1} << count) - 1);
}

struct Element {
  std::uint64_t w = 0;
  std::complex<double> z;
  std::uint64_t zm = 0;
};

class Fft {
 public:
  Fft(Machine& m, const FftInstance& in, AlgoOptions opts)
      : pl_(m), in_(in), opts_(opts), n_(in.n()), bits_(m.bits()), el_(in.n()) {}

  FftOutput run() {
    for (std::uint64_t r = 0; r < n_; ++r) {
      el_[r].w = r;
      const std::uint64_t src = bit_reverse(r, bits_);
      if (in_.mode == FftMode::Complex) {
        el_[r].z = in_.x[src];
      } else {
        el_[r].zm = in_.xm[src] % kNttModulus;
      }
    }
    if (bits_ > 0) rec(0, bits_);
    pl_.finish();
    FftOutput out;
    if (in_.mode == FftMode::Complex) {
      out.X.resize(n_);
      for (const auto& e : el_) out.X[e.w] = e.z;
    } else {
      out.Xm.resize(n_);
      for (const auto& e : el_) out.Xm[e.w] = e.zm;
    }
    return out;
  }

 private:
  Payload pack(const Element& e) const {
    if (in_.mode == FftMode::Complex) {
      Payload p = pack_double(e.z.real(), e.z.imag());
      p[2] = e.w;
      return p;
    }
    return {e.zm, 0, e.w, 0};
  }

  void unpack(Element& e, const Message& m) const {
    e.w = m.payload[2];
    if (in_.mode == FftMode::Complex) {
      e.z = {unpack_double(m.payload[0]), unpack_double(m.payload[1])};
    } else {
      e.zm = m.payload[0];
    }
  }

  void dummies(VpContext& ctx, Label label) {
    if (opts_.dummies) send_dummies(ctx, label, 1);
  }

  // Butterfly levels [lo, hi) on segments of 2^(hi-lo) VPs. On entry the VP at
  // segment offset o holds the element whose bits [lo, hi) equal o.
  void rec(unsigned lo, unsigned hi) {
    const unsigned L = hi - lo;
    const Label label = bits_ - L;
    if (L == 1) {
      base(lo, label);
      return;
    }
    const unsigned L1 = L / 2, L2 = L - L1;
    rec(lo, lo + L1);
    const std::uint64_t seg = std::uint64_t{1} << L;
    pl_.step(
        label,
        [=, this](VpContext& ctx) {
          const VpIndex r = ctx.index();
          const std::uint64_t base = r & ~(seg - 1);
          const auto& e = el_[r];
          const std::uint64_t b_low = bits_of(e.w, lo, L1), b_high = bits_of(e.w, lo + L1, L2);
          ctx.send(static_cast<VpIndex>(base + (b_low << L2) + b_high), pack(e));
          dummies(ctx, label);
        },
        [this](VpIndex r, std::vector<Message>& msgs) {
          for (const auto& m : msgs) unpack(el_[r], m);
        });
    rec(lo + L1, hi);
  }

  // Butterfly on bit `l` between the two VPs of each pair segment.
  void base(unsigned l, Label label) {
    pl_.step(
        label,
        [=, this](VpContext& ctx) {
          const VpIndex r = ctx.index();
          ctx.send(r ^ 1u, pack(el_[r]));
          dummies(ctx, label);
        },
        [this, l](VpIndex r, std::vector<Message>& msgs) {
          Element partner;
          for (const auto& m : msgs) unpack(partner, m);
          butterfly(el_[r], partner, l);
        });
  }

  void butterfly(Element& self, const Element& partner, unsigned l) const {
    const bool high = (self.w >> l) & 1u;
    const std::uint64_t span = std::uint64_t{1} << (l + 1);
    const std::uint64_t j = self.w & ((std::uint64_t{1} << l) - 1);
    if (in_.mode == FftMode::Complex) {
      const double ang = -2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(span);
      const std::complex<double> tw = std::polar(1.0, ang);
      self.z = high ? partner.z - tw * self.z : self.z + tw * partner.z;
    } else {
      const std::uint64_t tw = mod_pow(ntt_root(span), j);
      if (high) {
        self.zm = (partner.zm + kNttModulus - tw * self.zm % kNttModulus) % kNttModulus;
      } else {
        self.zm = (self.zm + tw * partner.zm) % kNttModulus;
      }
    }
  }

  Pipeline pl_;
  const FftInstance& in_;
  AlgoOptions opts_;
  std::uint64_t n_;
  unsigned bits_;
  std::vector<Element> el_;
};

}  // namespace

bool is_strict_fft_size(std::uint64_t n) { return is_pow2(n) && is_pow2(ilog2(n)); }

AlgorithmSpec<FftInstance, FftOutput> fft_spec(AlgoOptions opts) {
  AlgorithmSpec<FftInstance, FftOutput> spec;
  spec.problem = "fft";
  spec.input_size = [](const FftInstance& in) { return in.n(); };
  spec.vp_count = [](std::uint64_t n) {
    require_pow2(n, "FFT size");
    return n;
  };
  spec.program = [opts](Machine& m, const FftInstance& in) { return Fft(m, in, opts).run(); };
  spec.input_layout = "VP r holds x[bitrev(r)]";
  spec.output_layout = "X[w] held by the VP whose element id is w";
  return spec;
}

}  // namespace netobliv

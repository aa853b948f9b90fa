#include <immintrin.h>

#include <algorithm>
#include <bit>
#include <cstring>

#include "kernels_common.hpp"
#include "planeshape/simd/kernels.hpp"

namespace planeshape::simd {
namespace {

void or_words(std::uint64_t* dst, const std::uint64_t* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    const __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_or_si256(a, b));
  }
  for (; i < n; ++i) dst[i] |= src[i];
}

void and_words(std::uint64_t* dst, const std::uint64_t* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    const __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_and_si256(a, b));
  }
  for (; i < n; ++i) dst[i] &= src[i];
}

void andnot_words(std::uint64_t* dst, const std::uint64_t* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    const __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_andnot_si256(b, a));
  }
  for (; i < n; ++i) dst[i] &= ~src[i];
}

// Nibble-table popcount (Mula); AVX2 has no native vector popcount.
std::size_t popcount_words(const std::uint64_t* src, std::size_t n) {
  const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4, 0, 1, 1, 2, 1, 2, 2, 3, 1,
                                       2, 2, 3, 2, 3, 3, 4);
  const __m256i low = _mm256_set1_epi8(0x0f);
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    const __m256i lo = _mm256_and_si256(v, low);
    const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low);
    const __m256i cnt = _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo), _mm256_shuffle_epi8(lut, hi));
    acc = _mm256_add_epi64(acc, _mm256_sad_epu8(cnt, _mm256_setzero_si256()));
  }
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  std::size_t total = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < n; ++i) total += static_cast<std::size_t>(std::popcount(src[i]));
  return total;
}

bool any_andnot(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    if (!_mm256_testc_si256(vb, va)) return true;  // testc: (~vb & va) == 0
  }
  for (; i < n; ++i)
    if (a[i] & ~b[i]) return true;
  return false;
}

void column_step(const std::uint8_t* occ, std::int32_t* run, std::size_t n, std::int32_t cap) {
  const __m256i one = _mm256_set1_epi32(1);
  const __m256i vcap = _mm256_set1_epi32(cap);
  const __m256i zero = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m128i bytes = _mm_loadl_epi64(reinterpret_cast<const __m128i*>(occ + i));
    const __m256i o = _mm256_cvtepu8_epi32(bytes);
    const __m256i is_occ = _mm256_cmpgt_epi32(o, zero);
    __m256i r = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(run + i));
    r = _mm256_min_epi32(_mm256_add_epi32(r, one), vcap);
    r = _mm256_andnot_si256(is_occ, r);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(run + i), r);
  }
  for (; i < n; ++i) run[i] = occ[i] ? 0 : std::min(run[i] + 1, cap);
}

void min_into(std::int32_t* out, const std::int32_t* run, std::size_t n) {
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(out + i));
    const __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(run + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), _mm256_min_epi32(a, b));
  }
  for (; i < n; ++i) out[i] = std::min(out[i], run[i]);
}

void threshold_pack(const std::int32_t* value, std::size_t n, std::int32_t limit, bool want_le,
                    std::uint64_t* bits) {
  const std::size_t words = (n + 63) / 64;
  std::fill(bits, bits + words, 0);
  const __m256i vlim = _mm256_set1_epi32(limit);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(value + i));
    const __m256i gt = _mm256_cmpgt_epi32(v, vlim);
    unsigned m = static_cast<unsigned>(_mm256_movemask_ps(_mm256_castsi256_ps(gt)));
    if (want_le) m = ~m & 0xffu;
    bits[i >> 6] |= static_cast<std::uint64_t>(m) << (i & 63);
  }
  for (; i < n; ++i) {
    if ((value[i] <= limit) == want_le) bits[i >> 6] |= std::uint64_t{1} << (i & 63);
  }
}

std::int32_t masked_max(const std::int32_t* value, const std::uint8_t* mask, std::size_t n) {
  const __m256i zero = _mm256_setzero_si256();
  __m256i best = _mm256_set1_epi32(-1);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m128i bytes = _mm_loadl_epi64(reinterpret_cast<const __m128i*>(mask + i));
    const __m256i on = _mm256_cmpgt_epi32(_mm256_cvtepu8_epi32(bytes), zero);
    const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(value + i));
    best = _mm256_max_epi32(best, _mm256_blendv_epi8(_mm256_set1_epi32(-1), v, on));
  }
  alignas(32) std::int32_t lanes[8];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), best);
  std::int32_t out = *std::max_element(lanes, lanes + 8);
  for (; i < n; ++i)
    if (mask[i] && value[i] > out) out = value[i];
  return out;
}

inline __m128i cells4(__m256d v) {
  const __m256d lim = _mm256_set1_pd(detail::kCellClamp);
  v = _mm256_floor_pd(v);
  v = _mm256_min_pd(_mm256_max_pd(v, _mm256_sub_pd(_mm256_setzero_pd(), lim)), lim);
  return _mm256_cvttpd_epi32(v);
}

void affine_cells(const AffineCoeffs& m, const CellFrame& frame, const double* xs, const double* ys,
                  std::size_t n, std::int32_t* ci, std::int32_t* cj) {
  const __m256d a = _mm256_set1_pd(m.a), b = _mm256_set1_pd(m.b), c = _mm256_set1_pd(m.c);
  const __m256d d = _mm256_set1_pd(m.d), e = _mm256_set1_pd(m.e), f = _mm256_set1_pd(m.f);
  const __m256d x0 = _mm256_set1_pd(frame.x0), y0 = _mm256_set1_pd(frame.y0);
  const __m256d res = _mm256_set1_pd(frame.res);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d x = _mm256_loadu_pd(xs + k);
    const __m256d y = _mm256_loadu_pd(ys + k);
    const __m256d tx = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(a, x), _mm256_mul_pd(b, y)), e);
    const __m256d ty = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(c, x), _mm256_mul_pd(d, y)), f);
    _mm_storeu_si128(reinterpret_cast<__m128i*>(ci + k), cells4(_mm256_mul_pd(_mm256_sub_pd(tx, x0), res)));
    _mm_storeu_si128(reinterpret_cast<__m128i*>(cj + k), cells4(_mm256_mul_pd(_mm256_sub_pd(ty, y0), res)));
  }
  for (; k < n; ++k) {
    const double x = m.a * xs[k] + m.b * ys[k] + m.e;
    const double y = m.c * xs[k] + m.d * ys[k] + m.f;
    ci[k] = detail::to_cell((x - frame.x0) * frame.res);
    cj[k] = detail::to_cell((y - frame.y0) * frame.res);
  }
}

void radial_inverse(double lambda, double omega, double twist, int steps, double* rho, double* phase,
                    std::uint8_t* ok, std::size_t n) {
  const detail::RadialBranch br = detail::radial_branch(lambda);
  const __m256d slope = _mm256_set1_pd(br.slope), rcrit = _mm256_set1_pd(br.r_crit);
  const __m256d gmax = _mm256_set1_pd(br.g_max), three = _mm256_set1_pd(3.0);
  const __m256d minslope = _mm256_set1_pd(detail::kMinSlope), zero = _mm256_setzero_pd();
  const __m256d vomega = _mm256_set1_pd(omega), vtwist = _mm256_set1_pd(twist);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d p = _mm256_loadu_pd(rho + k);
    __m256d acc = _mm256_loadu_pd(phase + k);
    int okbits;
    std::memcpy(&okbits, ok + k, sizeof okbits);
    const __m128i okb = _mm_cvtsi32_si128(okbits);
    __m256d bad = _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_cvtepu8_epi64(okb), _mm256_setzero_si256()));
    for (int s = 0; s < steps; ++s) {
      bad = _mm256_or_pd(bad, _mm256_cmp_pd(p, gmax, _CMP_GT_OQ));
      __m256d r = _mm256_div_pd(p, slope);
      for (int it = 0; it < kRadialNewtonIterations; ++it) {
        const __m256d r2 = _mm256_mul_pd(r, r);
        const __m256d g = _mm256_sub_pd(_mm256_sub_pd(_mm256_mul_pd(slope, r), _mm256_mul_pd(r2, r)), p);
        const __m256d dg =
            _mm256_max_pd(_mm256_sub_pd(slope, _mm256_mul_pd(_mm256_mul_pd(three, r), r)), minslope);
        r = _mm256_min_pd(_mm256_max_pd(_mm256_sub_pd(r, _mm256_div_pd(g, dg)), zero), rcrit);
      }
      acc = _mm256_add_pd(acc, _mm256_add_pd(vomega, _mm256_mul_pd(vtwist, _mm256_mul_pd(r, r))));
      p = r;
    }
    _mm256_storeu_pd(rho + k, p);
    _mm256_storeu_pd(phase + k, acc);
    const int badmask = _mm256_movemask_pd(bad);
    for (int l = 0; l < 4; ++l) ok[k + l] = (badmask >> l) & 1 ? 0 : 1;
  }
  if (k < n) scalar_kernels().radial_inverse(lambda, omega, twist, steps, rho + k, phase + k, ok + k, n - k);
}

}  // namespace

const Kernels* avx2_kernels_impl() {
  static const Kernels k{"avx2",        or_words,       and_words,  andnot_words, popcount_words,
                         any_andnot,    column_step,    min_into,   threshold_pack, masked_max,
                         affine_cells,  radial_inverse};
  return &k;
}

}  // namespace planeshape::simd

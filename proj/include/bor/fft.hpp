#pragma once

#include <vector>

#include "bor/types.hpp"

namespace bor::fft {

// In-place unnormalized DFT, X_k = Σ_j x_j e^{-2πi jk/n}. Thread-safe; plans are cached per size.
void forward(cplx* data, int n);
// In-place unnormalized inverse, x_j = Σ_k X_k e^{+2πi jk/n}.
void backward(cplx* data, int n);

inline void forward(std::vector<cplx>& v) { forward(v.data(), static_cast<int>(v.size())); }
inline void backward(std::vector<cplx>& v) { backward(v.data(), static_cast<int>(v.size())); }

// Smallest power of two >= n.
int next_pow2(long n);

}  // namespace bor::fft

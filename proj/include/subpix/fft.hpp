#pragma once

#include <complex>

namespace subpix::fft {

// In-place complex 2-D transforms over row-major (y outer) data.
// Both directions are unnormalized: inverse(forward(x)) == (w*h) * x.
// Plans are cached per (width, height); lookups are lock-shared, insertion
// is serialized, and concurrent execution on distinct buffers is safe.
void forward(int width, int height, std::complex<double>* data);
void inverse(int width, int height, std::complex<double>* data);

}  // namespace subpix::fft

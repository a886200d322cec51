#pragma once

#include <cstdint>
#include <string>

#include "sketchlab/tensor3.hpp"
#include "sketchlab/types.hpp"

namespace sketchlab {

// On-disk tensor container "TNS1":
//   bytes 0..3   ASCII magic "TNS1"
//   byte  4      dtype: 0 = real float64, 1 = complex128 (interleaved re, im)
//   bytes 5..16  n1, n2, n3 as little-endian uint32
//   payload      entries in slice-major, then row-major order,
//                little-endian IEEE-754 float64
enum class TensorDtype : std::uint8_t { kReal = 0, kComplex = 1 };

// In-memory codec; the file functions wrap these around plain byte I/O.
// encode with kReal requires every imaginary part to be exactly zero.
std::string encode_tensor(const Tensor3& t,
                          TensorDtype dtype = TensorDtype::kComplex);
Tensor3 decode_tensor(const std::string& bytes);

Tensor3 load_tensor_file(const std::string& path);
void save_tensor_file(const Tensor3& t, const std::string& path,
                      TensorDtype dtype = TensorDtype::kComplex);

}  // namespace sketchlab

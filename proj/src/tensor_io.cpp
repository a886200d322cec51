#include "sketchlab/tensor_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <limits>
#include <vector>

namespace sketchlab {

namespace {

constexpr char kMagic[4] = {'T', 'N', 'S', '1'};
constexpr std::size_t kHeaderBytes = 17;  // magic + dtype + three u32 dims

// Dimensions are bounded so that the payload byte count fits comfortably in
// 64 bits even for complex data (16 bytes per entry).
constexpr std::uint64_t kMaxEntries = std::uint64_t{1} << 56;

void append_u32_le(std::string& out, std::uint32_t v) {
  for (int b = 0; b < 4; ++b) {
    out.push_back(static_cast<char>((v >> (8 * b)) & 0xffu));
  }
}

void append_f64_le(std::string& out, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  for (int b = 0; b < 8; ++b) {
    out.push_back(static_cast<char>((bits >> (8 * b)) & 0xffu));
  }
}

std::uint32_t read_u32_le(const std::string& bytes, std::size_t offset) {
  std::uint32_t v = 0;
  for (int b = 0; b < 4; ++b) {
    v |= static_cast<std::uint32_t>(
             static_cast<unsigned char>(bytes[offset + b]))
         << (8 * b);
  }
  return v;
}

double read_f64_le(const std::string& bytes, std::size_t offset) {
  std::uint64_t v = 0;
  for (int b = 0; b < 8; ++b) {
    v |= static_cast<std::uint64_t>(
             static_cast<unsigned char>(bytes[offset + b]))
         << (8 * b);
  }
  return std::bit_cast<double>(v);
}

}  // namespace

std::string encode_tensor(const Tensor3& t, TensorDtype dtype) {
  if (t.empty() || t.n1() < 1 || t.n2() < 1) {
    throw ShapeError("encode_tensor: tensor must have positive dimensions");
  }
  const auto n1 = static_cast<std::uint64_t>(t.n1());
  const auto n2 = static_cast<std::uint64_t>(t.n2());
  const auto n3 = static_cast<std::uint64_t>(t.n3());
  if (n1 > std::numeric_limits<std::uint32_t>::max() ||
      n2 > std::numeric_limits<std::uint32_t>::max() ||
      n3 > std::numeric_limits<std::uint32_t>::max()) {
    throw ShapeError("encode_tensor: dimension exceeds uint32 range");
  }

  const std::uint64_t entries = n1 * n2 * n3;
  const std::size_t per_entry = dtype == TensorDtype::kComplex ? 16 : 8;
  std::string out;
  out.reserve(kHeaderBytes + entries * per_entry);
  out.append(kMagic, 4);
  out.push_back(static_cast<char>(dtype));
  append_u32_le(out, static_cast<std::uint32_t>(n1));
  append_u32_le(out, static_cast<std::uint32_t>(n2));
  append_u32_le(out, static_cast<std::uint32_t>(n3));

  for (Index k = 0; k < t.n3(); ++k) {
    const DenseMatrix& s = t.slice(k);
    for (Index i = 0; i < s.rows(); ++i) {
      for (Index j = 0; j < s.cols(); ++j) {
        const Complex v = s(i, j);
        if (dtype == TensorDtype::kReal) {
          if (v.imag() != 0.0) {
            throw ValidationError(
                "encode_tensor: real dtype requested but entry has a nonzero "
                "imaginary part");
          }
          append_f64_le(out, v.real());
        } else {
          append_f64_le(out, v.real());
          append_f64_le(out, v.imag());
        }
      }
    }
  }
  return out;
}

Tensor3 decode_tensor(const std::string& bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw ParseError("tensor file: bad or missing magic, expected \"TNS1\"",
                     0);
  }
  if (bytes.size() < kHeaderBytes) {
    throw ParseError("tensor file: truncated header", bytes.size());
  }
  const auto dtype_byte = static_cast<unsigned char>(bytes[4]);
  if (dtype_byte > 1) {
    throw ParseError("tensor file: unknown dtype " +
                         std::to_string(static_cast<int>(dtype_byte)),
                     4);
  }
  const auto dtype = static_cast<TensorDtype>(dtype_byte);

  const std::uint32_t dims[3] = {read_u32_le(bytes, 5), read_u32_le(bytes, 9),
                                 read_u32_le(bytes, 13)};
  for (int d = 0; d < 3; ++d) {
    if (dims[d] == 0) {
      throw ParseError("tensor file: dimension " + std::to_string(d + 1) +
                           " is zero",
                       5 + 4 * static_cast<std::size_t>(d));
    }
  }
  // The product of two u32 values always fits in 64 bits, but the third
  // factor can wrap; divide instead of multiplying so the budget check is
  // immune to overflow.
  const std::uint64_t plane = std::uint64_t{dims[0]} * dims[1];
  if (plane > kMaxEntries / dims[2]) {
    throw ParseError("tensor file: dimensions overflow the entry budget", 5);
  }
  const std::uint64_t entries = plane * dims[2];
  const std::size_t per_entry = dtype == TensorDtype::kComplex ? 16 : 8;
  const std::uint64_t expected = kHeaderBytes + entries * per_entry;
  if (bytes.size() < expected) {
    throw ParseError("tensor file: truncated payload, expected " +
                         std::to_string(expected) + " bytes",
                     bytes.size());
  }
  if (bytes.size() > expected) {
    throw ParseError("tensor file: trailing bytes after payload", expected);
  }

  const auto n1 = static_cast<Index>(dims[0]);
  const auto n2 = static_cast<Index>(dims[1]);
  const auto n3 = static_cast<Index>(dims[2]);
  Tensor3 t = Tensor3::zero(n1, n2, n3);
  std::size_t off = kHeaderBytes;
  for (Index k = 0; k < n3; ++k) {
    DenseMatrix& s = t.slice(k);
    for (Index i = 0; i < n1; ++i) {
      for (Index j = 0; j < n2; ++j) {
        if (dtype == TensorDtype::kReal) {
          s(i, j) = Complex(read_f64_le(bytes, off), 0.0);
          off += 8;
        } else {
          s(i, j) = Complex(read_f64_le(bytes, off), read_f64_le(bytes, off + 8));
          off += 16;
        }
      }
    }
  }
  return t;
}

Tensor3 load_tensor_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open tensor file for reading: " + path);
  }
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  if (in.bad()) {
    throw IoError("read failure on tensor file: " + path);
  }
  return decode_tensor(bytes);
}

void save_tensor_file(const Tensor3& t, const std::string& path,
                      TensorDtype dtype) {
  const std::string bytes = encode_tensor(t, dtype);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open tensor file for writing: " + path);
  }
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) {
    throw IoError("write failure on tensor file: " + path);
  }
}

}  // namespace sketchlab

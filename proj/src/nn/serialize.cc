#include "styleeq/nn/serialize.h"

#include <sstream>
#include <stdexcept>
#include <vector>

#include <zlib.h>

#include "styleeq/binary_io.h"

namespace styleeq::nn {
namespace {

constexpr char kMagic[9] = "STEQPRM1";

std::uint32_t crc(const std::string& bytes, std::size_t n) {
  return static_cast<std::uint32_t>(
      crc32(0L, reinterpret_cast<const Bytef*>(bytes.data()), static_cast<uInt>(n)));
}

}  // namespace

std::string parameters_to_bytes(const ParameterStore<float>& store) {
  std::ostringstream out(std::ios::binary);
  binio::write_magic(out, kMagic);
  binio::write_pod<std::uint32_t>(out, kParamFormatVersion);
  binio::write_pod<std::uint32_t>(out, static_cast<std::uint32_t>(store.size()));
  for (int id = 0; id < store.size(); ++id) binio::write_string(out, store.name(id));
  for (int id = 0; id < store.size(); ++id) {
    binio::write_pod<std::uint32_t>(out, static_cast<std::uint32_t>(store.value(id).rows()));
    binio::write_pod<std::uint32_t>(out, static_cast<std::uint32_t>(store.value(id).cols()));
  }
  for (int id = 0; id < store.size(); ++id) {
    const auto& v = store.value(id);
    binio::write_floats(out, {v.data(), static_cast<std::size_t>(v.size())});
  }
  std::string bytes = out.str();
  const std::uint32_t sum = crc(bytes, bytes.size());
  bytes.append(reinterpret_cast<const char*>(&sum), sizeof(sum));
  return bytes;
}

void parameters_from_bytes(const std::string& bytes, ParameterStore<float>& store) {
  if (bytes.size() < 8 + 3 * sizeof(std::uint32_t)) {
    throw std::runtime_error("parameter blob truncated");
  }
  const std::size_t body = bytes.size() - sizeof(std::uint32_t);
  std::uint32_t stored = 0;
  std::memcpy(&stored, bytes.data() + body, sizeof(stored));
  if (stored != crc(bytes, body)) throw std::runtime_error("parameter blob checksum mismatch");

  std::istringstream in(bytes.substr(0, body), std::ios::binary);
  binio::expect_magic(in, kMagic);
  const auto version = binio::read_pod<std::uint32_t>(in);
  if (version != kParamFormatVersion) {
    throw std::runtime_error("unsupported parameter format version " + std::to_string(version));
  }
  const auto count = binio::read_pod<std::uint32_t>(in);
  if (count != static_cast<std::uint32_t>(store.size())) {
    throw std::runtime_error("parameter count mismatch: file has " + std::to_string(count) +
                             ", model expects " + std::to_string(store.size()));
  }
  for (int id = 0; id < store.size(); ++id) {
    const std::string name = binio::read_string(in, 4096);
    if (name != store.name(id)) {
      throw std::runtime_error("parameter name mismatch: file has " + name + ", model expects " +
                               store.name(id));
    }
  }
  for (int id = 0; id < store.size(); ++id) {
    const auto rows = binio::read_pod<std::uint32_t>(in);
    const auto cols = binio::read_pod<std::uint32_t>(in);
    if (rows != store.value(id).rows() || cols != store.value(id).cols()) {
      throw std::runtime_error("shape mismatch for parameter " + store.name(id));
    }
  }
  for (int id = 0; id < store.size(); ++id) {
    auto& v = store.value(id);
    binio::read_floats(in, {v.data(), static_cast<std::size_t>(v.size())});
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw std::runtime_error("trailing bytes in parameter blob");
  }
  store.zero_grad();
}

void write_parameters(std::ostream& out, const ParameterStore<float>& store) {
  const std::string bytes = parameters_to_bytes(store);
  binio::write_string(out, bytes);
}

void read_parameters(std::istream& in, ParameterStore<float>& store) {
  parameters_from_bytes(binio::read_string(in), store);
}

}  // namespace styleeq::nn

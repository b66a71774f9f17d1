#pragma once

#include <istream>
#include <ostream>
#include <string>

#include "styleeq/nn/parameter_store.h"

namespace styleeq::nn {

// Versioned parameter blob: magic, version, name table, shape table,
// little-endian float32 payload, trailing CRC-32 of everything before it.
inline constexpr std::uint32_t kParamFormatVersion = 1;

std::string parameters_to_bytes(const ParameterStore<float>& store);

// The store must already hold the expected architecture; names and shapes
// must match exactly.
void parameters_from_bytes(const std::string& bytes, ParameterStore<float>& store);

void write_parameters(std::ostream& out, const ParameterStore<float>& store);
void read_parameters(std::istream& in, ParameterStore<float>& store);

}  // namespace styleeq::nn

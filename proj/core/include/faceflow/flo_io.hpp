#pragma once

#include <filesystem>
#include <string>

#include "faceflow/flow_field.hpp"

namespace faceflow {

// Flow-file codec. Layout (all little-endian):
//   float32 202021.25   sanity tag ("PIEH" when read as bytes)
//   int32   width
//   int32   height
//   float32 u, v interleaved, row-major
// Vectors pass through a float32 payload, so write(read(p)) reproduces the
// file byte for byte.
void write_flo(const FlowField& flow, const std::filesystem::path& path);
FlowField read_flo(const std::filesystem::path& path);

// Writes via a temporary file in the target directory followed by an atomic
// rename, so concurrent workers never expose partially written files.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& bytes);

} // namespace faceflow

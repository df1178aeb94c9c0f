#pragma once

// Persistent Frobenius-matrix cache: content-addressed by a digest of the
// header, atomic writes, trailing checksum. Corrupt or truncated entries are
// reported and treated as absent.

#include <filesystem>
#include <optional>

#include "pk/dwork.hpp"

namespace pk {

inline constexpr u32 CACHE_SCHEMA_VERSION = 1;

std::string cache_header_string(const DworkParams& P);
std::string cache_key(const DworkParams& P);  // hex digest of the header

// <dir>/<digest>.frob; returns the path written
std::filesystem::path cache_store(const std::filesystem::path& dir, const FrobeniusMatrix& A);
std::optional<FrobeniusMatrix> cache_load(const std::filesystem::path& dir,
                                          const DworkParams& P);

// compute through the cache when a directory is given
FrobeniusMatrix frobenius_matrix_cached(const DworkParams& P,
                                        const std::optional<std::filesystem::path>& dir);

}  // namespace pk

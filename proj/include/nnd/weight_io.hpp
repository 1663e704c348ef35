// Binary weight and mask files.
//
// Weight file: magic "NNWV", u32 LE version (= 1), u64 LE count, then count
// IEEE-754 doubles, little-endian. Mask file: magic "NNMK", same header, then
// count bytes of 0/1. Writes go through a temp file plus rename.

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace nnd {

enum class IoErrorKind {
    open_failed,
    bad_magic,
    bad_version,
    truncated,
    non_finite_value,
    bad_mask_byte,
    write_failed,
};

class IoError : public std::runtime_error {
public:
    IoError(IoErrorKind kind, std::uint64_t offset, const std::string& message)
        : std::runtime_error(message + " (byte offset " + std::to_string(offset) + ")"),
          kind_(kind),
          offset_(offset) {}

    IoErrorKind kind() const noexcept { return kind_; }
    std::uint64_t offset() const noexcept { return offset_; }

private:
    IoErrorKind kind_;
    std::uint64_t offset_;
};

void write_weight_file(const std::filesystem::path& path, std::span<const double> values);
std::vector<double> read_weight_file(const std::filesystem::path& path);

void write_mask_file(const std::filesystem::path& path, std::span<const std::uint8_t> mask);
std::vector<std::uint8_t> read_mask_file(const std::filesystem::path& path);

// Whole-file text write through temp + rename (used for CSV and metadata).
void write_text_atomic(const std::filesystem::path& path, const std::string& content);

} // namespace nnd

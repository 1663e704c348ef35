#include "nnd/weight_io.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace nnd {

namespace {

constexpr char kWeightMagic[4] = {'N', 'N', 'W', 'V'};
constexpr char kMaskMagic[4] = {'N', 'N', 'M', 'K'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u64(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::string read_all(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(IoErrorKind::open_failed, 0, "cannot open " + path.string());
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return bytes;
}

struct Header {
    std::uint64_t count = 0;
};

Header parse_header(const std::string& bytes, const char magic[4],
                    const std::filesystem::path& path) {
    if (bytes.size() < 4)
        throw IoError(IoErrorKind::truncated, bytes.size(),
                      path.string() + ": file ends inside magic");
    if (!std::equal(magic, magic + 4, bytes.begin()))
        throw IoError(IoErrorKind::bad_magic, 0, path.string() + ": wrong magic");
    if (bytes.size() < 8)
        throw IoError(IoErrorKind::truncated, bytes.size(),
                      path.string() + ": file ends inside version");
    std::uint32_t version = 0;
    for (int i = 0; i < 4; ++i)
        version |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[4 + i])) << (8 * i);
    if (version != kVersion)
        throw IoError(IoErrorKind::bad_version, 4,
                      path.string() + ": unsupported version " + std::to_string(version));
    if (bytes.size() < 16)
        throw IoError(IoErrorKind::truncated, bytes.size(),
                      path.string() + ": file ends inside count");
    Header h;
    for (int i = 0; i < 8; ++i)
        h.count |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[8 + i])) << (8 * i);
    return h;
}

void write_bytes_atomic(const std::filesystem::path& path, const std::string& bytes) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError(IoErrorKind::write_failed, 0, "cannot open " + tmp.string());
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        out.flush();
        if (!out)
            throw IoError(IoErrorKind::write_failed, 0, "short write to " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw IoError(IoErrorKind::write_failed, 0,
                      "cannot rename " + tmp.string() + ": " + ec.message());
    }
}

} // namespace

void write_weight_file(const std::filesystem::path& path, std::span<const double> values) {
    std::string bytes;
    bytes.reserve(16 + values.size() * 8);
    bytes.append(kWeightMagic, 4);
    put_u32(bytes, kVersion);
    put_u64(bytes, values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i]))
            throw IoError(IoErrorKind::non_finite_value, 16 + 8 * i,
                          path.string() + ": refusing to write non-finite value");
        put_u64(bytes, std::bit_cast<std::uint64_t>(values[i]));
    }
    write_bytes_atomic(path, bytes);
}

std::vector<double> read_weight_file(const std::filesystem::path& path) {
    const std::string bytes = read_all(path);
    const Header h = parse_header(bytes, kWeightMagic, path);
    const std::uint64_t expected = 16 + 8 * h.count;
    if (bytes.size() != expected)
        throw IoError(IoErrorKind::truncated, bytes.size(),
                      path.string() + ": expected " + std::to_string(expected) + " bytes, got " +
                          std::to_string(bytes.size()));
    std::vector<double> values(h.count);
    for (std::uint64_t i = 0; i < h.count; ++i) {
        std::uint64_t bits = 0;
        for (int b = 0; b < 8; ++b)
            bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[16 + 8 * i + b]))
                    << (8 * b);
        values[i] = std::bit_cast<double>(bits);
        if (!std::isfinite(values[i]))
            throw IoError(IoErrorKind::non_finite_value, 16 + 8 * i,
                          path.string() + ": non-finite payload value");
    }
    return values;
}

void write_mask_file(const std::filesystem::path& path, std::span<const std::uint8_t> mask) {
    std::string bytes;
    bytes.reserve(16 + mask.size());
    bytes.append(kMaskMagic, 4);
    put_u32(bytes, kVersion);
    put_u64(bytes, mask.size());
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (mask[i] > 1)
            throw IoError(IoErrorKind::bad_mask_byte, 16 + i,
                          path.string() + ": mask bytes must be 0 or 1");
        bytes.push_back(static_cast<char>(mask[i]));
    }
    write_bytes_atomic(path, bytes);
}

std::vector<std::uint8_t> read_mask_file(const std::filesystem::path& path) {
    const std::string bytes = read_all(path);
    const Header h = parse_header(bytes, kMaskMagic, path);
    const std::uint64_t expected = 16 + h.count;
    if (bytes.size() != expected)
        throw IoError(IoErrorKind::truncated, bytes.size(),
                      path.string() + ": expected " + std::to_string(expected) + " bytes, got " +
                          std::to_string(bytes.size()));
    std::vector<std::uint8_t> mask(h.count);
    for (std::uint64_t i = 0; i < h.count; ++i) {
        const auto b = static_cast<std::uint8_t>(bytes[16 + i]);
        if (b > 1)
            throw IoError(IoErrorKind::bad_mask_byte, 16 + i,
                          path.string() + ": mask bytes must be 0 or 1");
        mask[i] = b;
    }
    return mask;
}

void write_text_atomic(const std::filesystem::path& path, const std::string& content) {
    write_bytes_atomic(path, content);
}

} // namespace nnd

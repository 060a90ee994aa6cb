#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include <zlib.h>

#include "cyldom/tropical.hpp"

namespace cyldom {

namespace {

constexpr std::array<char, 4> kMagic = {'T', 'M', 'X', '1'};
constexpr std::uint32_t kFormatVersion = 1;
constexpr std::uint32_t kEntryWidth = 4;

static_assert(std::endian::native == std::endian::little,
              "the .tmx writer assumes a little-endian host");

void put_u32(std::ostream& out, std::uint32_t v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

void put_u64(std::ostream& out, std::uint64_t v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

std::uint32_t get_u32(std::istream& in) {
    std::uint32_t v = 0;
    in.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
}

std::uint64_t get_u64(std::istream& in) {
    std::uint64_t v = 0;
    in.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
}

std::uint32_t payload_crc(const tropical_value* data, std::size_t count) {
    uLong crc = crc32_z(0L, nullptr, 0);
    const auto* bytes = reinterpret_cast<const Bytef*>(data);
    std::size_t remaining = count * sizeof(tropical_value);
    while (remaining > 0) {
        const std::size_t chunk = std::min<std::size_t>(remaining, 1u << 28);
        crc = crc32_z(crc, bytes, chunk);
        bytes += chunk;
        remaining -= chunk;
    }
    return static_cast<std::uint32_t>(crc);
}

} // namespace

void write_matrix(const TropicalMatrix& a, const std::filesystem::path& path) {
    if (a.dim() == 0) throw dimension_error("refusing to write an empty matrix");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot open " + path.string() + " for writing");

    out.write(kMagic.data(), kMagic.size());
    put_u32(out, kFormatVersion);
    put_u32(out, static_cast<std::uint32_t>(a.dim()));
    put_u32(out, kEntryWidth);
    put_u32(out, 0); // flags, reserved
    put_u32(out, a.meta_rows);
    put_u64(out, a.meta_power);

    const std::size_t count = a.dim() * a.dim();
    out.write(reinterpret_cast<const char*>(a.data()),
              static_cast<std::streamsize>(count * sizeof(tropical_value)));
    put_u32(out, payload_crc(a.data(), count));
    out.flush();
    if (!out) throw io_error("write failed for " + path.string());
}

TropicalMatrix read_matrix(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open " + path.string() + " for reading");

    std::array<char, 4> magic{};
    in.read(magic.data(), magic.size());
    if (!in || magic != kMagic) {
        throw format_error(path.string() + ": bad magic, not a .tmx file");
    }
    const std::uint32_t version = get_u32(in);
    if (version != kFormatVersion) {
        throw format_error(path.string() + ": unsupported format version " +
                           std::to_string(version));
    }
    const std::uint32_t dim = get_u32(in);
    const std::uint32_t width = get_u32(in);
    const std::uint32_t flags = get_u32(in);
    const std::uint32_t meta_rows = get_u32(in);
    const std::uint64_t meta_power = get_u64(in);
    if (!in) throw format_error(path.string() + ": truncated header");
    if (dim == 0) throw format_error(path.string() + ": zero dimension");
    if (width != kEntryWidth) {
        throw format_error(path.string() + ": unsupported entry width " +
                           std::to_string(width));
    }
    if (flags != 0) {
        throw format_error(path.string() + ": unsupported flags " +
                           std::to_string(flags));
    }

    TropicalMatrix m(dim);
    m.meta_rows = meta_rows;
    m.meta_power = meta_power;
    const std::size_t count = std::size_t(dim) * dim;
    in.read(reinterpret_cast<char*>(m.data()),
            static_cast<std::streamsize>(count * sizeof(tropical_value)));
    if (in.gcount() !=
        static_cast<std::streamsize>(count * sizeof(tropical_value))) {
        throw format_error(path.string() + ": truncated payload");
    }
    const std::uint32_t stored_crc = get_u32(in);
    if (!in) throw format_error(path.string() + ": missing checksum");
    if (stored_crc != payload_crc(m.data(), count)) {
        throw format_error(path.string() + ": payload checksum mismatch");
    }
    return m;
}

} // namespace cyldom

#include <png.h>

#include <cstring>
#include <fstream>

#include "fracdom/engine.hpp"
#include "fracdom/error.hpp"

namespace fracdom::engine {

namespace {

void append_bytes(png_structp png, png_bytep data, png_size_t length)
{
    auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
    out->insert(out->end(), data, data + length);
}

void flush_nothing(png_structp) {}

[[noreturn]] void on_png_error(png_structp, png_const_charp msg)
{
    throw IoError(std::string("PNG encoder: ") + msg);
}

void on_png_warning(png_structp, png_const_charp) {}

}  // namespace

std::vector<std::uint8_t> encode_png(const Image& image)
{
    if (image.width < 1 || image.height < 1 ||
        image.rgb.size() != static_cast<std::size_t>(image.width) * image.height * 3) {
        throw IoError("image buffer does not match its dimensions");
    }
    std::vector<std::uint8_t> out;
    png_structp png =
        png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, on_png_error, on_png_warning);
    if (png == nullptr) {
        throw IoError("png_create_write_struct failed");
    }
    png_infop info = png_create_info_struct(png);
    if (info == nullptr) {
        png_destroy_write_struct(&png, nullptr);
        throw IoError("png_create_info_struct failed");
    }
    try {
        png_set_write_fn(png, &out, append_bytes, flush_nothing);
        png_set_IHDR(png, info, static_cast<png_uint_32>(image.width),
                     static_cast<png_uint_32>(image.height), 8, PNG_COLOR_TYPE_RGB,
                     PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
        png_set_compression_level(png, 6);
        png_write_info(png, info);
        const auto stride = static_cast<std::size_t>(image.width) * 3;
        std::vector<png_byte> row(stride);
        for (int y = 0; y < image.height; ++y) {
            std::memcpy(row.data(), image.rgb.data() + y * stride, stride);
            png_write_row(png, row.data());
        }
        png_write_end(png, nullptr);
    } catch (...) {
        png_destroy_write_struct(&png, &info);
        throw;
    }
    png_destroy_write_struct(&png, &info);
    return out;
}

void write_png(const std::filesystem::path& path, const Image& image)
{
    const auto bytes = encode_png(image);
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw IoError("write failed for " + path.string());
    }
}

std::vector<std::uint8_t> dump_grid(const EscapeGrid& grid)
{
    std::vector<std::uint8_t> out;
    out.reserve(grid.cells().size() * 4);
    for (const Cell& cell : grid.cells()) {
        const std::uint32_t m = cell.m;
        out.push_back(static_cast<std::uint8_t>(m & 0xffu));
        out.push_back(static_cast<std::uint8_t>((m >> 8) & 0xffu));
        out.push_back(static_cast<std::uint8_t>((m >> 16) & 0xffu));
        out.push_back(static_cast<std::uint8_t>((m >> 24) & 0xffu));
    }
    return out;
}

}  // namespace fracdom::engine

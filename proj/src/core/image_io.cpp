#include "image_io.hpp"

#include <png.h>

#include <cctype>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>

namespace pdebin {

namespace {

constexpr double kLumaR = 0.2126;
constexpr double kLumaG = 0.7152;
constexpr double kLumaB = 0.0722;

struct FileCloser {
  void operator()(std::FILE* f) const noexcept { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::filesystem::path& path, const char* mode) {
  FilePtr f(std::fopen(path.c_str(), mode));
  if (!f) fail(ErrorCode::Io, "cannot open " + path.string() + ": " + std::strerror(errno));
  return f;
}

// Decoded PNG rows after libpng transforms: 1 (gray) or 3 (RGB) channels,
// 8 or 16 bits, 16-bit samples stored big-endian.
struct PngRaster {
  png_uint_32 width = 0;
  png_uint_32 height = 0;
  int channels = 0;
  int bit_depth = 0;
  std::vector<png_byte> pixels;
  std::vector<png_bytep> rows;
  char message[256] = {};
};

void png_error_to_buffer(png_structp png, png_const_charp msg) {
  auto* raster = static_cast<PngRaster*>(png_get_error_ptr(png));
  std::snprintf(raster->message, sizeof raster->message, "%s", msg);
  png_longjmp(png, 1);
}

void png_warning_ignore(png_structp, png_const_charp) {}

// All state that must survive a longjmp lives in *raster (caller-owned).
bool decode_png(std::FILE* file, PngRaster* raster) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, raster,
                                           png_error_to_buffer, png_warning_ignore);
  if (!png) return false;
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    return false;
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    return false;
  }
  png_init_io(png, file);
  png_read_info(png, info);

  const int color = png_get_color_type(png, info);
  const int depth = png_get_bit_depth(png, info);
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color == PNG_COLOR_TYPE_GRAY && depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (color & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
  png_set_interlace_handling(png);
  png_read_update_info(png, info);

  raster->width = png_get_image_width(png, info);
  raster->height = png_get_image_height(png, info);
  raster->channels = png_get_channels(png, info);
  raster->bit_depth = png_get_bit_depth(png, info);
  const std::size_t stride = png_get_rowbytes(png, info);
  raster->pixels.resize(stride * raster->height);
  raster->rows.resize(raster->height);
  for (png_uint_32 y = 0; y < raster->height; ++y)
    raster->rows[y] = raster->pixels.data() + y * stride;
  png_read_image(png, raster->rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return true;
}

ScalarField load_png(const std::filesystem::path& path) {
  auto file = open_file(path, "rb");
  PngRaster raster;
  if (!decode_png(file.get(), &raster))
    fail(ErrorCode::Format, "cannot decode PNG " + path.string() + ": " + raster.message);
  if (raster.width == 0 || raster.height == 0)
    fail(ErrorCode::Dimension, "zero-dimension image " + path.string());
  if (raster.channels != 1 && raster.channels != 3)
    fail(ErrorCode::Format, "unsupported PNG channel layout in " + path.string());

  const int w = static_cast<int>(raster.width);
  const int h = static_cast<int>(raster.height);
  const bool wide = raster.bit_depth == 16;
  const double scale = wide ? 65535.0 : 255.0;
  std::vector<double> samples(static_cast<std::size_t>(w) * h);
  for (int y = 0; y < h; ++y) {
    const png_byte* row = raster.rows[y];
    for (int x = 0; x < w; ++x) {
      auto channel = [&](int c) {
        const std::size_t i = static_cast<std::size_t>(x) * raster.channels + c;
        return wide ? static_cast<double>((row[2 * i] << 8) | row[2 * i + 1]) / scale
                    : static_cast<double>(row[i]) / scale;
      };
      double v = raster.channels == 1
                     ? channel(0)
                     : kLumaR * channel(0) + kLumaG * channel(1) + kLumaB * channel(2);
      samples[static_cast<std::size_t>(y) * w + x] = std::clamp(v, 0.0, 1.0);
    }
  }
  return ScalarField(w, h, std::move(samples));
}

// Reads one whitespace/comment-delimited header token of a netpbm file.
long read_pgm_token(std::istream& in, const std::string& name) {
  int c = in.get();
  while (in) {
    if (c == '#') {
      while (in && c != '\n') c = in.get();
    } else if (std::isspace(c)) {
      c = in.get();
    } else {
      break;
    }
  }
  if (!in || !std::isdigit(c)) fail(ErrorCode::Format, "malformed PGM header in " + name);
  long value = 0;
  while (in && std::isdigit(c)) {
    value = value * 10 + (c - '0');
    if (value > 1'000'000'000) fail(ErrorCode::Format, "PGM header value too large in " + name);
    c = in.get();
  }
  // exactly one whitespace byte separates the header from the raster
  if (!in || !std::isspace(c)) fail(ErrorCode::Format, "malformed PGM header in " + name);
  return value;
}

ScalarField load_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open " + path.string());
  char magic[2];
  in.read(magic, 2);
  const std::string name = path.string();
  const long w = read_pgm_token(in, name);
  const long h = read_pgm_token(in, name);
  const long maxval = read_pgm_token(in, name);
  if (w == 0 || h == 0) fail(ErrorCode::Dimension, "zero-dimension image " + name);
  if (maxval < 1 || maxval > 65535) fail(ErrorCode::Format, "invalid PGM maxval in " + name);

  const std::size_t count = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
  const std::size_t bytes_per = maxval > 255 ? 2 : 1;
  std::vector<unsigned char> raw(count * bytes_per);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (static_cast<std::size_t>(in.gcount()) != raw.size())
    fail(ErrorCode::Format, "truncated PGM raster in " + name);

  std::vector<double> samples(count);
  const double scale = static_cast<double>(maxval);
  for (std::size_t i = 0; i < count; ++i) {
    const unsigned v = bytes_per == 2 ? (raw[2 * i] << 8) | raw[2 * i + 1] : raw[i];
    samples[i] = std::min(1.0, static_cast<double>(v) / scale);
  }
  return ScalarField(static_cast<int>(w), static_cast<int>(h), std::move(samples));
}

bool wants_pgm(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".pgm";
}

struct PngWriteState {
  char message[256] = {};
};

void png_write_error(png_structp png, png_const_charp msg) {
  auto* state = static_cast<PngWriteState*>(png_get_error_ptr(png));
  std::snprintf(state->message, sizeof state->message, "%s", msg);
  png_longjmp(png, 1);
}

bool encode_png(std::FILE* file, int width, int height, png_bytep* rows, PngWriteState* state) {
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, state, png_write_error,
                                            png_warning_ignore);
  if (!png) return false;
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    return false;
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    return false;
  }
  png_init_io(png, file);
  png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height), 8,
               PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_write_image(png, rows);
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return true;
}

void save_gray8(int width, int height, std::vector<std::uint8_t> bytes,
                const std::filesystem::path& path) {
  if (wants_pgm(path)) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::Io, "cannot open " + path.string() + " for writing");
    out << "P5\n" << width << ' ' << height << "\n255\n";
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) fail(ErrorCode::Io, "write failed for " + path.string());
    return;
  }
  auto file = open_file(path, "wb");
  std::vector<png_bytep> rows(height);
  for (int y = 0; y < height; ++y) rows[y] = bytes.data() + static_cast<std::size_t>(y) * width;
  PngWriteState state;
  if (!encode_png(file.get(), width, height, rows.data(), &state))
    fail(ErrorCode::Io, "cannot encode PNG " + path.string() + ": " + state.message);
  if (std::fflush(file.get()) != 0) fail(ErrorCode::Io, "write failed for " + path.string());
}

}  // namespace

std::uint8_t quantize_8bit(double v) noexcept {
  return static_cast<std::uint8_t>(std::floor(255.0 * std::clamp(v, 0.0, 1.0) + 0.5));
}

ScalarField load_image(const std::filesystem::path& path) {
  unsigned char magic[8] = {};
  {
    auto file = open_file(path, "rb");
    const std::size_t n = std::fread(magic, 1, sizeof magic, file.get());
    if (n >= 8 && png_sig_cmp(magic, 0, 8) == 0) return load_png(path);
    if (n >= 2 && magic[0] == 'P' && magic[1] == '5') return load_pgm(path);
  }
  fail(ErrorCode::Format, "unsupported image format: " + path.string());
}

BinaryMap load_binary(const std::filesystem::path& path) {
  const ScalarField field = load_image(path);
  std::vector<std::uint8_t> bits(field.size());
  auto src = field.values();
  for (std::size_t i = 0; i < bits.size(); ++i)
    bits[i] = src[i] < 0.5 ? BinaryMap::kText : BinaryMap::kBackground;
  return BinaryMap(field.width(), field.height(), std::move(bits));
}

void save_image(const ScalarField& field, const std::filesystem::path& path) {
  std::vector<std::uint8_t> bytes(field.size());
  auto src = field.values();
  for (std::size_t i = 0; i < bytes.size(); ++i) bytes[i] = quantize_8bit(src[i]);
  save_gray8(field.width(), field.height(), std::move(bytes), path);
}

void save_image(const BinaryMap& map, const std::filesystem::path& path) {
  std::vector<std::uint8_t> bytes(map.size());
  auto src = map.values();
  for (std::size_t i = 0; i < bytes.size(); ++i) bytes[i] = src[i] ? 255 : 0;
  save_gray8(map.width(), map.height(), std::move(bytes), path);
}

}  // namespace pdebin

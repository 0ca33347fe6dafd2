#include <png.h>

#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <memory>
#include <vector>

#include "hudsal/imagery.hpp"

namespace hudsal {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

struct DecodeState {
  png_uint_32 width = 0;
  png_uint_32 height = 0;
  int bit_depth = 0;
  std::vector<png_byte> pixels;  // RGB, tightly packed
  std::vector<png_bytep> rows;
  char message[256] = {};
};

void on_png_error(png_structp png, png_const_charp msg) {
  auto* state = static_cast<DecodeState*>(png_get_error_ptr(png));
  if (state != nullptr) std::snprintf(state->message, sizeof state->message, "%s", msg);
  png_longjmp(png, 1);
}

void on_png_warning(png_structp, png_const_charp) {}

// Returns false with state.message set on a libpng error. Nothing with a
// nontrivial destructor is created between setjmp and the last libpng call.
bool decode(std::FILE* file, DecodeState& state) {
  png_structp png =
      png_create_read_struct(PNG_LIBPNG_VER_STRING, &state, on_png_error, on_png_warning);
  if (png == nullptr) {
    std::snprintf(state.message, sizeof state.message, "out of memory");
    return false;
  }
  png_infop info = png_create_info_struct(png);
  if (info == nullptr) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    std::snprintf(state.message, sizeof state.message, "out of memory");
    return false;
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    return false;
  }

  png_init_io(png, file);
  png_read_info(png, info);
  state.width = png_get_image_width(png, info);
  state.height = png_get_image_height(png, info);
  state.bit_depth = png_get_bit_depth(png, info);
  const int color_type = png_get_color_type(png, info);
  if (state.bit_depth == 16) {
    std::snprintf(state.message, sizeof state.message,
                  "16-bit PNG is not supported; only 8-bit rasters are accepted");
    png_destroy_read_struct(&png, &info, nullptr);
    return false;
  }

  if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
  if (color_type == PNG_COLOR_TYPE_GRAY && state.bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
  if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA) {
    png_set_gray_to_rgb(png);
  }
  png_set_strip_alpha(png);
  png_set_interlace_handling(png);
  png_read_update_info(png, info);

  if (png_get_rowbytes(png, info) != static_cast<std::size_t>(state.width) * 3) {
    std::snprintf(state.message, sizeof state.message, "unexpected row layout after expansion");
    png_destroy_read_struct(&png, &info, nullptr);
    return false;
  }
  state.pixels.resize(static_cast<std::size_t>(state.width) * state.height * 3);
  state.rows.resize(state.height);
  for (png_uint_32 y = 0; y < state.height; ++y) {
    state.rows[y] = state.pixels.data() + static_cast<std::size_t>(y) * state.width * 3;
  }
  png_read_image(png, state.rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return true;
}

}  // namespace

RgbImage load_png(const std::filesystem::path& path) {
  FilePtr file(std::fopen(path.c_str(), "rb"));
  if (!file) throw IoError("cannot open " + path.string() + ": " + std::strerror(errno));

  png_byte signature[8];
  if (std::fread(signature, 1, 8, file.get()) != 8 || png_sig_cmp(signature, 0, 8) != 0) {
    throw IoError(path.string() + " is not a PNG file");
  }
  std::rewind(file.get());

  DecodeState state;
  if (!decode(file.get(), state)) {
    throw IoError("cannot decode " + path.string() + ": " + state.message);
  }

  RgbImage img(static_cast<int>(state.width), static_cast<int>(state.height));
  const png_byte* p = state.pixels.data();
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x, p += 3) img.set(x, y, {p[0], p[1], p[2]});
  }
  return img;
}

namespace {

void write_png(const std::filesystem::path& path, int width, int height, bool rgb,
               const std::vector<png_byte>& pixels) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(width);
  image.height = static_cast<png_uint_32>(height);
  image.format = rgb ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  if (png_image_write_to_file(&image, path.c_str(), 0, pixels.data(), 0, nullptr) == 0) {
    const std::string msg = image.message;
    png_image_free(&image);
    throw IoError("cannot write " + path.string() + ": " + msg);
  }
}

}  // namespace

void save_png(const RgbImage& img, const std::filesystem::path& path) {
  std::vector<png_byte> pixels;
  pixels.reserve(static_cast<std::size_t>(img.width()) * img.height() * 3);
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      const Rgb c = img.at(x, y);
      pixels.insert(pixels.end(), {c.r, c.g, c.b});
    }
  }
  write_png(path, img.width(), img.height(), true, pixels);
}

void save_gray_png(const GrayMap& map, const std::filesystem::path& path) {
  if (map.rows() < 1 || map.cols() < 1) throw ValidationError("cannot save an empty map");
  std::vector<png_byte> pixels;
  pixels.reserve(static_cast<std::size_t>(map.size()));
  for (Eigen::Index y = 0; y < map.rows(); ++y) {
    for (Eigen::Index x = 0; x < map.cols(); ++x) pixels.push_back(quantize(map(y, x)));
  }
  write_png(path, static_cast<int>(map.cols()), static_cast<int>(map.rows()), false, pixels);
}

}  // namespace hudsal

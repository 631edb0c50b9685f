// Copyright 2026 The Hintguard Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <png.h>

#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "hintguard/error.hpp"
#include "hintguard/imaging.hpp"

namespace hintguard {
namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

[[noreturn]] void on_png_error(png_structp png, png_const_charp msg) {
  auto* what = static_cast<std::string*>(png_get_error_ptr(png));
  if (what) *what = msg;
  png_longjmp(png, 1);
}

void on_png_warning(png_structp, png_const_charp) {}

struct Decoded {
  int width = 0;
  int height = 0;
  int channels = 0;  // 1..4
  std::vector<std::uint8_t> pixels;
};

// libpng reports errors through longjmp; no C++ objects with non-trivial
// destructors may be created between setjmp and the end of the decode.
Decoded decode(const std::filesystem::path& path) {
  FilePtr file(std::fopen(path.c_str(), "rb"));
  if (!file) throw IoError("cannot open " + path.string());

  std::uint8_t sig[8];
  if (std::fread(sig, 1, 8, file.get()) != 8 || png_sig_cmp(sig, 0, 8) != 0) {
    throw FormatError("not a PNG file: " + path.string());
  }

  std::string message;
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &message,
                                           on_png_error, on_png_warning);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw Error("libpng initialisation failed");
  }

  Decoded out;
  std::vector<png_bytep> rows;
  volatile bool bad_depth = false;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw FormatError("malformed PNG " + path.string() + ": " + message);
  }
  png_init_io(png, file.get());
  png_set_sig_bytes(png, 8);
  png_read_info(png, info);

  const int depth = png_get_bit_depth(png, info);
  const int color = png_get_color_type(png, info);
  if (depth != 8 || color == PNG_COLOR_TYPE_PALETTE) {
    bad_depth = true;
  } else {
    png_set_interlace_handling(png);
    png_read_update_info(png, info);
    out.width = static_cast<int>(png_get_image_width(png, info));
    out.height = static_cast<int>(png_get_image_height(png, info));
    out.channels = png_get_channels(png, info);
    const std::size_t stride = png_get_rowbytes(png, info);
    out.pixels.resize(stride * static_cast<std::size_t>(out.height));
    rows.resize(static_cast<std::size_t>(out.height));
    for (int y = 0; y < out.height; ++y) {
      rows[static_cast<std::size_t>(y)] =
          out.pixels.data() + stride * static_cast<std::size_t>(y);
    }
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
  }
  png_destroy_read_struct(&png, &info, nullptr);
  if (bad_depth) {
    throw FormatError("only 8-bit non-palette PNGs are supported: " +
                      path.string());
  }
  return out;
}

void encode(const std::filesystem::path& path, int width, int height,
            int color_type, int channels, const std::uint8_t* pixels) {
  FilePtr file(std::fopen(path.c_str(), "wb"));
  if (!file) throw IoError("cannot write " + path.string());

  std::string message;
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &message,
                                            on_png_error, on_png_warning);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_write_struct(&png, &info);
    throw Error("libpng initialisation failed");
  }
  std::vector<png_const_bytep> rows(static_cast<std::size_t>(height));
  const std::size_t stride = static_cast<std::size_t>(width) * channels;
  for (int y = 0; y < height; ++y) {
    rows[static_cast<std::size_t>(y)] = pixels + stride * y;
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError("PNG encode failed for " + path.string() + ": " + message);
  }
  png_init_io(png, file.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(width),
               static_cast<png_uint_32>(height), 8, color_type,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_write_rows(png, const_cast<png_bytepp>(rows.data()),
                 static_cast<png_uint_32>(height));
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  if (std::fflush(file.get()) != 0) {
    throw IoError("flush failed for " + path.string());
  }
}

}  // namespace

ImageBuffer load_png(const std::filesystem::path& path) {
  Decoded d = decode(path);
  std::vector<std::uint8_t> rgb(static_cast<std::size_t>(d.width) * d.height *
                                3);
  const std::size_t n = static_cast<std::size_t>(d.width) * d.height;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint8_t* src = d.pixels.data() + i * d.channels;
    std::uint8_t* dst = rgb.data() + i * 3;
    if (d.channels <= 2) {
      dst[0] = dst[1] = dst[2] = src[0];
    } else {
      dst[0] = src[0];
      dst[1] = src[1];
      dst[2] = src[2];
    }
  }
  return ImageBuffer::from_rgb(d.width, d.height, std::move(rgb));
}

void save_png(const ImageBuffer& image, const std::filesystem::path& path) {
  encode(path, image.width(), image.height(), PNG_COLOR_TYPE_RGB, 3,
         image.data().data());
}

GrayBuffer load_gray_png(const std::filesystem::path& path) {
  return to_luma(load_png(path));
}

void save_gray_png(const GrayBuffer& gray, const std::filesystem::path& path) {
  encode(path, gray.width(), gray.height(), PNG_COLOR_TYPE_GRAY, 1,
         gray.data().data());
}

PayloadMask load_mask(const std::filesystem::path& path) {
  const GrayBuffer gray = load_gray_png(path);
  std::vector<std::uint8_t> bits(gray.pixel_count());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    bits[i] = gray.data()[i] > 127 ? 1 : 0;
  }
  return PayloadMask(gray.width(), gray.height(), std::move(bits),
                     path.stem().string());
}

void save_mask(const PayloadMask& mask, const std::filesystem::path& path) {
  std::vector<std::uint8_t> px(mask.bits().size());
  for (std::size_t i = 0; i < px.size(); ++i) px[i] = mask.bits()[i] ? 255 : 0;
  save_gray_png(GrayBuffer(mask.width(), mask.height(), std::move(px)), path);
}

}  // namespace hintguard

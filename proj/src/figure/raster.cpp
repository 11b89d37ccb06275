// Copyright 2026 The medforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "medforge/figure/raster.hpp"

#include <png.h>
// jpeglib.h needs size_t and FILE declared first.
#include <csetjmp>
#include <cstdio>
#include <jpeglib.h>

#include <algorithm>
#include <cstring>
#include <string>

#include "medforge/common/error.hpp"
#include "medforge/common/files.hpp"

namespace medforge::figure {
namespace {

bool LooksLikePng(std::span<const std::uint8_t> b) {
  static constexpr std::uint8_t kSig[8] = {0x89, 'P', 'N', 'G', 0x0d, 0x0a, 0x1a, 0x0a};
  return b.size() >= 8 && std::memcmp(b.data(), kSig, 8) == 0;
}

bool LooksLikeJpeg(std::span<const std::uint8_t> b) {
  return b.size() >= 3 && b[0] == 0xff && b[1] == 0xd8 && b[2] == 0xff;
}

Raster DecodePng(std::span<const std::uint8_t> bytes) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    throw Error(Errc::kImageDecodeError, std::string("png: ") + image.message);
  }
  image.format = PNG_FORMAT_RGB;
  Raster out;
  out.width = static_cast<int>(image.width);
  out.height = static_cast<int>(image.height);
  out.rgb.resize(PNG_IMAGE_SIZE(image));
  png_color white{255, 255, 255};
  if (!png_image_finish_read(&image, &white, out.rgb.data(), 0, nullptr)) {
    std::string msg = image.message;
    png_image_free(&image);
    throw Error(Errc::kImageDecodeError, "png: " + msg);
  }
  return out;
}

struct JpegErrorManager {
  jpeg_error_mgr base;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX];
};

void JpegErrorExit(j_common_ptr cinfo) {
  auto* mgr = reinterpret_cast<JpegErrorManager*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, mgr->message);
  std::longjmp(mgr->jump, 1);
}

Raster DecodeJpeg(std::span<const std::uint8_t> bytes) {
  jpeg_decompress_struct cinfo;
  JpegErrorManager err;
  cinfo.err = jpeg_std_error(&err.base);
  err.base.error_exit = JpegErrorExit;
  err.message[0] = '\0';
  Raster out;
  // JpegErrorExit longjmps here; nothing with a destructor is created below.
  if (setjmp(err.jump)) {
    jpeg_destroy_decompress(&cinfo);
    throw Error(Errc::kImageDecodeError, std::string("jpeg: ") + err.message);
  }
  jpeg_create_decompress(&cinfo);
  jpeg_mem_src(&cinfo, bytes.data(), static_cast<unsigned long>(bytes.size()));
  jpeg_read_header(&cinfo, TRUE);
  cinfo.out_color_space = JCS_RGB;
  jpeg_start_decompress(&cinfo);
  out.width = static_cast<int>(cinfo.output_width);
  out.height = static_cast<int>(cinfo.output_height);
  out.rgb.resize(static_cast<std::size_t>(out.width) * out.height * 3);
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW row = out.rgb.data() + static_cast<std::size_t>(cinfo.output_scanline) * out.width * 3;
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  return out;
}

}  // namespace

Raster Raster::Filled(int w, int h, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  Raster out;
  out.width = w;
  out.height = h;
  out.rgb.resize(static_cast<std::size_t>(w) * h * 3);
  for (std::size_t i = 0; i < out.rgb.size(); i += 3) {
    out.rgb[i] = r;
    out.rgb[i + 1] = g;
    out.rgb[i + 2] = b;
  }
  return out;
}

Raster DecodeImage(std::span<const std::uint8_t> bytes) {
  if (LooksLikePng(bytes)) return DecodePng(bytes);
  if (LooksLikeJpeg(bytes)) return DecodeJpeg(bytes);
  throw Error(Errc::kImageDecodeError, "unrecognized image format (expected PNG or JPEG)");
}

Raster LoadImage(const std::filesystem::path& path) {
  auto bytes = files::ReadBytes(path);
  try {
    return DecodeImage(bytes);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.message());
  }
}

std::vector<std::uint8_t> EncodePng(const Raster& image) {
  png_image img;
  std::memset(&img, 0, sizeof(img));
  img.version = PNG_IMAGE_VERSION;
  img.width = static_cast<png_uint_32>(image.width);
  img.height = static_cast<png_uint_32>(image.height);
  img.format = PNG_FORMAT_RGB;
  png_alloc_size_t size = 0;
  if (!png_image_write_get_memory_size(img, size, 0, image.rgb.data(), 0, nullptr)) {
    throw Error(Errc::kImageDecodeError, std::string("png encode: ") + img.message);
  }
  std::vector<std::uint8_t> out(size);
  if (!png_image_write_to_memory(&img, out.data(), &size, 0, image.rgb.data(), 0, nullptr)) {
    throw Error(Errc::kImageDecodeError, std::string("png encode: ") + img.message);
  }
  out.resize(size);
  return out;
}

Raster Crop(const Raster& image, int x, int y, int w, int h) {
  if (x < 0 || y < 0 || w < 1 || h < 1 || x + w > image.width || y + h > image.height) {
    throw Error(Errc::kInvalidArgument, "crop rectangle outside image");
  }
  Raster out;
  out.width = w;
  out.height = h;
  out.rgb.resize(static_cast<std::size_t>(w) * h * 3);
  for (int row = 0; row < h; ++row) {
    std::memcpy(out.Pixel(0, row), image.Pixel(x, y + row), static_cast<std::size_t>(w) * 3);
  }
  return out;
}

void FillRect(Raster& image, int x, int y, int w, int h, std::uint8_t r, std::uint8_t g,
              std::uint8_t b) {
  for (int row = std::max(0, y); row < std::min(image.height, y + h); ++row) {
    for (int col = std::max(0, x); col < std::min(image.width, x + w); ++col) {
      auto* p = image.Pixel(col, row);
      p[0] = r;
      p[1] = g;
      p[2] = b;
    }
  }
}

}  // namespace medforge::figure

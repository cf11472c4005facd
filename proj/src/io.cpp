// Copyright (c) 2026, the fsaug authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fsaug/io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fsaug::io {

namespace fs = std::filesystem;

namespace {

std::uint8_t quantize(double v) {
  return static_cast<std::uint8_t>(std::lround(v * 255.0));
}

struct DecodedPng {
  int width = 0, height = 0, channels = 0;
  std::vector<std::uint8_t> pixels;  // interleaved, row-major
};

DecodedPng decode_png(const std::string& path) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str())) {
    throw std::runtime_error("decode error: " + path + ": " + image.message);
  }
  if (image.format & (PNG_FORMAT_FLAG_ALPHA | PNG_FORMAT_FLAG_LINEAR |
                      PNG_FORMAT_FLAG_COLORMAP)) {
    png_image_free(&image);
    throw std::runtime_error("decode error: " + path +
                             ": only 8-bit grayscale or RGB PNGs are supported");
  }
  const bool color = (image.format & PNG_FORMAT_FLAG_COLOR) != 0;
  image.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;

  DecodedPng out;
  out.width = static_cast<int>(image.width);
  out.height = static_cast<int>(image.height);
  out.channels = color ? 3 : 1;
  out.pixels.resize(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, out.pixels.data(), 0, nullptr)) {
    std::string msg = image.message;
    png_image_free(&image);
    throw std::runtime_error("decode error: " + path + ": " + msg);
  }
  return out;
}

void encode_png(const std::uint8_t* pixels, int width, int height, int channels,
                const std::string& path) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(width);
  image.height = static_cast<png_uint_32>(height);
  image.format = channels == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;

  const std::string tmp = path + ".tmp";
  if (!png_image_write_to_file(&image, tmp.c_str(), 0, pixels, 0, nullptr)) {
    std::string msg = image.message;
    std::remove(tmp.c_str());
    throw std::runtime_error("write error: " + path + ": " + msg);
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    std::remove(tmp.c_str());
    throw std::runtime_error("write error: " + path + ": " + ec.message());
  }
}

}  // namespace

ImageBatch load_png(const std::string& path) {
  const DecodedPng png = decode_png(path);
  ImageBatch out(1, png.channels, png.height, png.width);
  for (int ci = 0; ci < png.channels; ++ci)
    for (int hi = 0; hi < png.height; ++hi)
      for (int wi = 0; wi < png.width; ++wi)
        out.at(0, ci, hi, wi) =
            png.pixels[(static_cast<std::size_t>(hi) * png.width + wi) * png.channels +
                       ci] /
            255.0;
  return out;
}

ImageBatch load_images(const std::string& dir) {
  if (!fs::is_directory(dir)) throw std::runtime_error("not a directory: " + dir);
  std::vector<std::string> names;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".png")
      names.push_back(entry.path().string());
  }
  if (names.empty()) throw std::runtime_error("no .png files in " + dir);
  std::sort(names.begin(), names.end());

  ImageBatch first = load_png(names[0]);
  ImageBatch out(static_cast<int>(names.size()), first.c, first.h, first.w);
  const std::size_t plane = static_cast<std::size_t>(first.c) * first.h * first.w;
  std::copy(first.data.begin(), first.data.end(), out.data.begin());
  for (std::size_t i = 1; i < names.size(); ++i) {
    ImageBatch img = load_png(names[i]);
    if (img.c != out.c)
      throw std::runtime_error("mixed color modes: " + names[i]);
    if (img.h != out.h || img.w != out.w)
      throw std::runtime_error("dimension mismatch: " + names[i]);
    std::copy(img.data.begin(), img.data.end(), out.data.begin() + i * plane);
  }
  return out;
}

void save_png(const ImageBatch& batch, int ni, const std::string& path) {
  std::vector<std::uint8_t> pixels(static_cast<std::size_t>(batch.h) * batch.w *
                                   batch.c);
  for (int hi = 0; hi < batch.h; ++hi)
    for (int wi = 0; wi < batch.w; ++wi)
      for (int ci = 0; ci < batch.c; ++ci)
        pixels[(static_cast<std::size_t>(hi) * batch.w + wi) * batch.c + ci] =
            quantize(batch.at(ni, ci, hi, wi));
  encode_png(pixels.data(), batch.w, batch.h, batch.c, path);
}

void save_images(const ImageBatch& batch, const std::string& dir,
                 const std::string& prefix) {
  fs::create_directories(dir);
  for (int ni = 0; ni < batch.n; ++ni) {
    char name[32];
    std::snprintf(name, sizeof name, "%s%04d.png", prefix.c_str(), ni);
    save_png(batch, ni, (fs::path(dir) / name).string());
  }
}

void save_grid(const ViewBatch& views, const std::string& path) {
  constexpr int kGutter = 2;
  const int grid_h = views.n * views.h + (views.n - 1) * kGutter;
  const int grid_w = views.v * views.w + (views.v - 1) * kGutter;
  std::vector<std::uint8_t> pixels(
      static_cast<std::size_t>(grid_h) * grid_w * views.c, 0);
  for (int ni = 0; ni < views.n; ++ni) {
    const int top = ni * (views.h + kGutter);
    for (int vi = 0; vi < views.v; ++vi) {
      const int left = vi * (views.w + kGutter);
      for (int hi = 0; hi < views.h; ++hi)
        for (int wi = 0; wi < views.w; ++wi)
          for (int ci = 0; ci < views.c; ++ci)
            pixels[(static_cast<std::size_t>(top + hi) * grid_w + (left + wi)) *
                       views.c +
                   ci] = quantize(views.at(ni, vi, ci, hi, wi));
    }
  }
  encode_png(pixels.data(), grid_w, grid_h, views.c, path);
}

namespace {

void put_u32le(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
  out.push_back(static_cast<char>((v >> 16) & 0xff));
  out.push_back(static_cast<char>((v >> 24) & 0xff));
}

std::uint32_t get_u32le(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

}  // namespace

EmbeddingSet load_embeddings(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  if (bytes.size() < 16 || bytes.compare(0, 4, "EMB1") != 0)
    throw std::runtime_error(path + ": bad magic");
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
  const std::uint32_t n = get_u32le(p + 4);
  const std::uint32_t d = get_u32le(p + 8);
  const std::uint32_t flags = get_u32le(p + 12);
  const std::size_t expected = 16 + 4ull * n * d;
  if (bytes.size() != expected)
    throw std::runtime_error(path + ": file size disagrees with header");

  EmbeddingSet out;
  out.vectors = Matrix(n, d);
  out.normalized = (flags & 1u) != 0;
  for (std::size_t i = 0; i < static_cast<std::size_t>(n) * d; ++i) {
    std::uint32_t word = get_u32le(p + 16 + 4 * i);
    float f;
    std::memcpy(&f, &word, sizeof f);
    out.vectors.data[i] = static_cast<double>(f);
  }
  out.validate();  // rejects NaN/Inf and mis-flagged normalization
  return out;
}

void save_embeddings(const Matrix& vectors, bool normalized, const std::string& path) {
  std::string bytes = "EMB1";
  put_u32le(bytes, static_cast<std::uint32_t>(vectors.rows));
  put_u32le(bytes, static_cast<std::uint32_t>(vectors.cols));
  put_u32le(bytes, normalized ? 1u : 0u);
  for (double v : vectors.data) {
    const float f = static_cast<float>(v);
    std::uint32_t word;
    std::memcpy(&word, &f, sizeof word);
    put_u32le(bytes, word);
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()))) {
      std::remove(tmp.c_str());
      throw std::runtime_error("write error: " + path);
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    std::remove(tmp.c_str());
    throw std::runtime_error("write error: " + path + ": " + ec.message());
  }
}

Labels load_labels(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line != "index,domain_label,class_label")
    throw std::runtime_error(path + ": bad label header");

  std::vector<std::pair<int, std::pair<int, int>>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    int idx, dom, cls;
    char c1, c2;
    if (!(ss >> idx >> c1 >> dom >> c2 >> cls) || c1 != ',' || c2 != ',')
      throw std::runtime_error(path + ": bad label row: " + line);
    rows.emplace_back(idx, std::make_pair(dom, cls));
  }
  const int n = static_cast<int>(rows.size());
  Labels out;
  out.domain.assign(n, -1);
  out.cls.assign(n, -1);
  for (const auto& [idx, labels] : rows) {
    if (idx < 0 || idx >= n || out.domain[idx] != -1)
      throw std::runtime_error(path + ": indices must cover 0..n-1 exactly once");
    out.domain[idx] = labels.first;
    out.cls[idx] = labels.second;
  }
  return out;
}

void save_labels(const Labels& labels, const std::string& path) {
  std::ostringstream ss;
  ss << "index,domain_label,class_label\n";
  for (std::size_t i = 0; i < labels.domain.size(); ++i)
    ss << i << "," << labels.domain[i] << "," << labels.cls[i] << "\n";
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    const std::string bytes = ss.str();
    if (!out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()))) {
      std::remove(tmp.c_str());
      throw std::runtime_error("write error: " + path);
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    std::remove(tmp.c_str());
    throw std::runtime_error("write error: " + path + ": " + ec.message());
  }
}

}  // namespace fsaug::io

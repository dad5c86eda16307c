// Copyright 2026 ara-toolkit authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "ara/wav_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iostream>
#include <vector>

namespace ara {
namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatIeeeFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint32_t read_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t read_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
  out.push_back(v & 0xFF);
  out.push_back((v >> 8) & 0xFF);
  out.push_back((v >> 16) & 0xFF);
  out.push_back((v >> 24) & 0xFF);
}

void put_u16(std::vector<unsigned char>& out, std::uint16_t v) {
  out.push_back(v & 0xFF);
  out.push_back((v >> 8) & 0xFF);
}

}  // namespace

AudioSignal load_wav(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot open WAV file: " + path);
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(f)),
                                   std::istreambuf_iterator<char>());
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
    throw DataError("not a RIFF/WAVE file: " + path);

  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t sample_rate = 0;
  const unsigned char* data = nullptr;
  std::size_t data_len = 0;
  bool have_fmt = false;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const char* id = reinterpret_cast<const char*>(bytes.data() + pos);
    std::uint32_t chunk_len = read_u32(bytes.data() + pos + 4);
    std::size_t body = pos + 8;
    if (body + chunk_len > bytes.size()) chunk_len = static_cast<std::uint32_t>(bytes.size() - body);
    if (std::memcmp(id, "fmt ", 4) == 0 && chunk_len >= 16) {
      format = read_u16(bytes.data() + body);
      channels = read_u16(bytes.data() + body + 2);
      sample_rate = read_u32(bytes.data() + body + 4);
      bits = read_u16(bytes.data() + body + 14);
      if (format == kFormatExtensible && chunk_len >= 40) {
        // Subformat GUID starts with the ordinary format code.
        format = read_u16(bytes.data() + body + 24);
      }
      have_fmt = true;
    } else if (std::memcmp(id, "data", 4) == 0) {
      data = bytes.data() + body;
      data_len = chunk_len;
    }
    pos = body + chunk_len + (chunk_len & 1);  // chunks are word aligned
  }

  if (!have_fmt || data == nullptr) throw DataError("WAV missing fmt/data chunk: " + path);
  if (channels == 0 || sample_rate == 0) throw DataError("WAV has invalid fmt chunk: " + path);
  if (channels > 1)
    std::cerr << "wav_io: " << path << " has " << channels
              << " channels; using channel 0\n";

  const bool pcm16 = format == kFormatPcm && bits == 16;
  const bool float32 = format == kFormatIeeeFloat && bits == 32;
  if (!pcm16 && !float32)
    throw DataError("unsupported WAV encoding (want PCM16 or float32): " + path);

  const std::size_t bytes_per_sample = bits / 8;
  const std::size_t frame_size = bytes_per_sample * channels;
  const std::size_t n_frames = data_len / frame_size;
  if (n_frames == 0) throw DataError("zero-length audio: " + path);

  AudioSignal out;
  out.sample_rate = static_cast<int>(sample_rate);
  out.samples.resize(n_frames);
  for (std::size_t i = 0; i < n_frames; ++i) {
    const unsigned char* p = data + i * frame_size;  // channel 0
    if (pcm16) {
      std::int16_t v;
      std::memcpy(&v, p, 2);
      out.samples[i] = static_cast<double>(v) / 32768.0;
    } else {
      float v;
      std::memcpy(&v, p, 4);
      out.samples[i] = static_cast<double>(v);
    }
  }
  validate(out, path.c_str());
  return out;
}

void save_wav(const AudioSignal& signal, const std::string& path,
              WavEncoding encoding, bool clamp) {
  validate(signal, "save_wav");
  const bool pcm16 = encoding == WavEncoding::Pcm16;
  if (pcm16 && !clamp) {
    for (double v : signal.samples)
      if (v < -1.0 || v > 1.0)
        throw DataError("save_wav: sample out of [-1,1] for PCM16 (use clamp)");
  }

  const std::uint16_t bits = pcm16 ? 16 : 32;
  const std::uint32_t n = static_cast<std::uint32_t>(signal.samples.size());
  const std::uint32_t byte_rate = signal.sample_rate * bits / 8;
  const std::uint32_t data_len = n * bits / 8;

  std::vector<unsigned char> out;
  out.reserve(44 + data_len);
  out.insert(out.end(), {'R', 'I', 'F', 'F'});
  put_u32(out, 36 + data_len);
  out.insert(out.end(), {'W', 'A', 'V', 'E', 'f', 'm', 't', ' '});
  put_u32(out, 16);
  put_u16(out, pcm16 ? kFormatPcm : kFormatIeeeFloat);
  put_u16(out, 1);  // mono
  put_u32(out, static_cast<std::uint32_t>(signal.sample_rate));
  put_u32(out, byte_rate);
  put_u16(out, static_cast<std::uint16_t>(bits / 8));
  put_u16(out, bits);
  out.insert(out.end(), {'d', 'a', 't', 'a'});
  put_u32(out, data_len);

  for (double v : signal.samples) {
    if (pcm16) {
      double scaled = std::lround(std::clamp(v, -1.0, 1.0) * 32768.0);
      std::int16_t q = static_cast<std::int16_t>(
          std::clamp(scaled, -32768.0, 32767.0));
      unsigned char b[2];
      std::memcpy(b, &q, 2);
      out.insert(out.end(), b, b + 2);
    } else {
      float q = static_cast<float>(v);
      unsigned char b[4];
      std::memcpy(b, &q, 4);
      out.insert(out.end(), b, b + 4);
    }
  }

  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw DataError("cannot open for writing: " + path);
  f.write(reinterpret_cast<const char*>(out.data()),
          static_cast<std::streamsize>(out.size()));
  if (!f) throw DataError("write failed: " + path);
}

}  // namespace ara

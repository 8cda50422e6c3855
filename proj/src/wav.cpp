#include "ogs/wav.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <fstream>
#include <vector>

namespace ogs {

namespace {

std::uint32_t le32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | static_cast<std::uint32_t>(p[1]) << 8 |
         static_cast<std::uint32_t>(p[2]) << 16 |
         static_cast<std::uint32_t>(p[3]) << 24;
}

std::uint16_t le16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | p[1] << 8);
}

void put32(std::ostream& out, std::uint32_t v) {
  const std::array<char, 4> b{static_cast<char>(v & 0xff),
                              static_cast<char>((v >> 8) & 0xff),
                              static_cast<char>((v >> 16) & 0xff),
                              static_cast<char>((v >> 24) & 0xff)};
  out.write(b.data(), 4);
}

void put16(std::ostream& out, std::uint16_t v) {
  const std::array<char, 2> b{static_cast<char>(v & 0xff),
                              static_cast<char>((v >> 8) & 0xff)};
  out.write(b.data(), 2);
}

}  // namespace

WavData read_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  const auto bad = [&](const std::string& why) {
    return IoError(path.string() + ": " + why);
  };
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
    throw bad("not a RIFF/WAVE file");

  WavData wav;
  bool have_fmt = false;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char* chunk = bytes.data() + pos;
    const std::uint32_t size = le32(chunk + 4);
    const std::size_t body = pos + 8;
    if (body + size > bytes.size()) throw bad("truncated chunk");
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (size < 16) throw bad("short fmt chunk");
      const unsigned char* f = bytes.data() + body;
      const auto format = le16(f), channels = le16(f + 2), bits = le16(f + 14);
      if (format != 1 || bits != 16)
        throw bad("unsupported format (only 16-bit PCM is supported)");
      if (channels != 1)
        throw bad("unsupported channel count " + std::to_string(channels) +
                  " (only mono is supported)");
      wav.sample_rate = le32(f + 4);
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      if (!have_fmt) throw bad("data chunk before fmt chunk");
      const std::size_t n = size / 2;
      wav.samples = RealTensor(Shape::vec(n));
      for (std::size_t i = 0; i < n; ++i) {
        const auto raw = static_cast<std::int16_t>(le16(bytes.data() + body + 2 * i));
        wav.samples[i] = raw / 32768.0;
      }
      return wav;
    }
    pos = body + size + (size & 1);
  }
  throw bad(have_fmt ? "no data chunk" : "no fmt chunk");
}

void write_wav(const std::filesystem::path& path, const WavData& wav) {
  wav.samples.validate_finite("audio");
  const std::size_t n = wav.samples.size();
  if (n > (0xffffffffu - 36) / 2) throw ValidationError("audio too long for WAV");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  const auto data_bytes = static_cast<std::uint32_t>(2 * n);
  out.write("RIFF", 4);
  put32(out, 36 + data_bytes);
  out.write("WAVEfmt ", 8);
  put32(out, 16);
  put16(out, 1);
  put16(out, 1);
  put32(out, wav.sample_rate);
  put32(out, wav.sample_rate * 2);
  put16(out, 2);
  put16(out, 16);
  out.write("data", 4);
  put32(out, data_bytes);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = std::clamp(std::round(wav.samples[i] * 32768.0), -32768.0, 32767.0);
    put16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(v)));
  }
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace ogs

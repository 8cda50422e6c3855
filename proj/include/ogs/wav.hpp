#pragma once

#include <cstdint>
#include <filesystem>

#include "ogs/tensor.hpp"

namespace ogs {

/// Mono audio with samples in [-1, 1).
struct WavData {
  RealTensor samples;
  std::uint32_t sample_rate = 16000;
};

/// 16-bit PCM mono RIFF/WAVE (little endian). Samples are divided by 32768.
/// Other formats raise IoError.
WavData read_wav(const std::filesystem::path& path);

/// Writes 16-bit PCM mono; samples are scaled by 32768, rounded and clipped.
void write_wav(const std::filesystem::path& path, const WavData& wav);

}  // namespace ogs

#ifndef UGV_WAV_HPP_
#define UGV_WAV_HPP_

// Mono 16-bit signed little-endian PCM WAV, amplitudes scaled by 32767.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "ugv/errors.hpp"

namespace ugv::wav {

struct Pcm {
    std::vector<double> samples;
    int sample_rate = 0;
};

namespace detail {

inline void put_u16(std::string& out, std::uint16_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
}

inline void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

inline std::uint32_t get_u32(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

inline std::uint16_t get_u16(const unsigned char* p) {
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

} // namespace detail

inline std::int16_t to_pcm16(double x) {
    const double scaled = std::round(std::clamp(x, -1.0, 1.0) * 32767.0);
    return static_cast<std::int16_t>(scaled);
}

inline std::string encode(std::span<const double> samples, int sample_rate) {
    const auto data_bytes = static_cast<std::uint32_t>(samples.size() * 2);
    std::string out;
    out.reserve(44 + data_bytes);
    out += "RIFF";
    detail::put_u32(out, 36 + data_bytes);
    out += "WAVEfmt ";
    detail::put_u32(out, 16);
    detail::put_u16(out, 1); // PCM
    detail::put_u16(out, 1); // mono
    detail::put_u32(out, static_cast<std::uint32_t>(sample_rate));
    detail::put_u32(out, static_cast<std::uint32_t>(sample_rate) * 2);
    detail::put_u16(out, 2);
    detail::put_u16(out, 16);
    out += "data";
    detail::put_u32(out, data_bytes);
    for (double x : samples) detail::put_u16(out, static_cast<std::uint16_t>(to_pcm16(x)));
    return out;
}

inline Pcm decode(std::span<const unsigned char> bytes) {
    if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
        std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
        throw InputError("not a RIFF/WAVE file");
    }
    Pcm pcm;
    bool have_fmt = false;
    std::size_t pos = 12;
    while (pos + 8 <= bytes.size()) {
        const unsigned char* chunk = bytes.data() + pos;
        const std::uint32_t size = detail::get_u32(chunk + 4);
        const std::size_t body = pos + 8;
        if (body + size > bytes.size()) throw InputError("truncated WAV chunk");
        if (std::memcmp(chunk, "fmt ", 4) == 0) {
            if (size < 16) throw InputError("short fmt chunk");
            const unsigned char* f = bytes.data() + body;
            const auto format = detail::get_u16(f);
            const auto channels = detail::get_u16(f + 2);
            const auto bits = detail::get_u16(f + 14);
            if (format != 1 || channels != 1 || bits != 16) {
                throw InputError("unsupported WAV: need mono 16-bit PCM");
            }
            pcm.sample_rate = static_cast<int>(detail::get_u32(f + 4));
            have_fmt = true;
        } else if (std::memcmp(chunk, "data", 4) == 0) {
            if (!have_fmt) throw InputError("WAV data chunk before fmt chunk");
            const unsigned char* d = bytes.data() + body;
            pcm.samples.reserve(size / 2);
            for (std::uint32_t i = 0; i + 1 < size; i += 2) {
                const auto v = static_cast<std::int16_t>(detail::get_u16(d + i));
                pcm.samples.push_back(static_cast<double>(v) / 32767.0);
            }
            return pcm;
        }
        pos = body + size + (size & 1);
    }
    throw InputError("WAV has no data chunk");
}

inline void write_file(const std::string& path, std::span<const double> samples, int sample_rate) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot open " + path + " for writing");
    const auto bytes = encode(samples, sample_rate);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw InputError("write failed: " + path);
}

inline Pcm read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                     std::istreambuf_iterator<char>());
    return decode(bytes);
}

} // namespace ugv::wav

#endif

// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "uavsec/tag.hpp"

#include <openssl/evp.h>
#include <openssl/hmac.h>

#include <array>
#include <cmath>
#include <cstring>
#include <numbers>
#include <stdexcept>

namespace uavsec {

namespace {

void append_le(std::vector<std::uint8_t>& out, std::uint64_t v)
{
    for (int i = 0; i < 8; ++i)
        out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

/// Byte stream HMAC(key, message || counter) for counter = 0, 1, ...
class HashStream {
public:
    HashStream(std::span<const std::uint8_t> key, std::vector<std::uint8_t> message)
        : key_(key.begin(), key.end()), message_(std::move(message))
    {
    }

    std::uint64_t next_u64()
    {
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i)
            v |= static_cast<std::uint64_t>(next_byte()) << (8 * i);
        return v;
    }

    // Uniform on (0, 1), never exactly 0.
    double next_unit()
    {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

private:
    std::uint8_t next_byte()
    {
        if (pos_ == block_.size())
            refill();
        return block_[pos_++];
    }

    void refill()
    {
        std::vector<std::uint8_t> input = message_;
        append_le(input, counter_++);
        unsigned int len = 0;
        const auto* digest = HMAC(EVP_sha256(), key_.data(), static_cast<int>(key_.size()), input.data(), input.size(),
                                  block_.data(), &len);
        if (digest == nullptr || len != block_.size())
            throw std::runtime_error("generate_tag: HMAC-SHA256 failed");
        pos_ = 0;
    }

    std::vector<std::uint8_t> key_;
    std::vector<std::uint8_t> message_;
    std::array<std::uint8_t, 32> block_{};
    std::size_t pos_ = 32;
    std::uint64_t counter_ = 0;
};

}  // namespace

std::vector<std::complex<double>> generate_tag(std::span<const std::complex<double>> message_symbols,
                                               std::span<const std::uint8_t> key, int l_tag, TagKind kind)
{
    if (l_tag < 1)
        throw std::invalid_argument("generate_tag: tag length must be positive");
    std::vector<std::uint8_t> message;
    message.reserve(message_symbols.size() * 16);
    for (const auto& s : message_symbols) {
        std::uint64_t re = 0, im = 0;
        const double r = s.real(), i = s.imag();
        std::memcpy(&re, &r, sizeof re);
        std::memcpy(&im, &i, sizeof im);
        append_le(message, re);
        append_le(message, im);
    }
    HashStream stream(key, std::move(message));

    std::vector<std::complex<double>> tag(static_cast<std::size_t>(l_tag));
    for (auto& t : tag) {
        if (kind == TagKind::gaussian) {
            // |t|^2 = -ln(u1) ~ Exp(1), uniform phase
            const double radius = std::sqrt(-std::log(stream.next_unit()));
            const double angle = 2.0 * std::numbers::pi * stream.next_unit();
            t = std::polar(radius, angle);
        } else {
            const auto bits = stream.next_u64();
            const double re = (bits & 1u) ? 1.0 : -1.0;
            const double im = (bits & 2u) ? 1.0 : -1.0;
            t = std::complex<double>(re, im) * (1.0 / std::numbers::sqrt2);
        }
    }
    return tag;
}

std::vector<std::complex<double>> generate_tag(std::span<const std::complex<double>> message_symbols,
                                               std::uint64_t key, int l_tag, TagKind kind)
{
    std::array<std::uint8_t, 8> bytes{};
    for (int i = 0; i < 8; ++i)
        bytes[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(key >> (8 * i));
    return generate_tag(message_symbols, std::span<const std::uint8_t>(bytes), l_tag, kind);
}

}  // namespace uavsec

#include "expdensity/exponent_set.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <stdexcept>

#include "expdensity/errors.hpp"

namespace expdensity {

VSeq::VSeq(int max_index, std::vector<int8_t> values)
    : max_index_(max_index), v_(std::move(values)) {
    if (max_index_ < 2 || v_.size() != static_cast<size_t>(max_index_ - 1))
        throw std::invalid_argument("VSeq: values must cover n = 2..max_index");
    for (int8_t x : v_)
        if (x < -1 || x > 1)
            throw std::invalid_argument("VSeq: entries must be in {-1,0,1}");
}

int VSeq::at(int n) const {
    assert(n >= 2 && n <= max_index_);
    return v_[static_cast<size_t>(n - 2)];
}

bool VSeq::is_characteristic_difference() const {
    int partial = 1; // u(1)
    for (int8_t x : v_) {
        partial += x;
        if (partial != 0 && partial != 1) return false;
    }
    return true;
}

namespace {

bool is_squarefree_small(uint64_t n) {
    for (uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            n /= d;
            if (n % d == 0) return false;
        }
    }
    return true;
}

bool is_prime_small(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

uint64_t parse_uint(std::string_view tok) {
    uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw SpecError("set-spec: bad integer '" + std::string(tok) + "'");
    return value;
}

} // namespace

ExponentSet ExponentSet::parse(std::string_view spec) {
    auto colon = spec.find(':');
    if (colon == std::string_view::npos)
        throw SpecError("set-spec: expected 'preset:', 'list:' or 'mask:' prefix");
    std::string_view head = spec.substr(0, colon);
    std::string_view body = spec.substr(colon + 1);

    if (head == "preset") {
        for (auto& [name, desc] : preset_catalog()) {
            (void)desc;
            if (body == name) {
                Preset p = name == "all"          ? Preset::all
                           : name == "only1"      ? Preset::only1
                           : name == "squarefree" ? Preset::squarefree
                           : name == "pow2"       ? Preset::pow2
                                                  : Preset::primes1;
                return make_preset(p);
            }
        }
        throw SpecError("set-spec: unknown preset '" + std::string(body) + "'");
    }
    if (head == "list") {
        if (body.empty()) throw SpecError("set-spec: empty list");
        std::vector<uint64_t> members;
        size_t pos = 0;
        while (pos <= body.size()) {
            size_t comma = body.find(',', pos);
            std::string_view tok = body.substr(pos, comma == std::string_view::npos
                                                        ? std::string_view::npos
                                                        : comma - pos);
            members.push_back(parse_uint(tok));
            if (comma == std::string_view::npos) break;
            pos = comma + 1;
            if (pos == body.size()) throw SpecError("set-spec: trailing comma in list");
        }
        return from_list(std::move(members));
    }
    if (head == "mask") {
        if (body.empty()) throw SpecError("set-spec: empty mask");
        std::vector<bool> bits;
        bits.reserve(body.size());
        for (char c : body) {
            if (c != '0' && c != '1') throw SpecError("set-spec: mask must be [01]+");
            bits.push_back(c == '1');
        }
        return from_mask(std::move(bits));
    }
    throw SpecError("set-spec: unknown kind '" + std::string(head) + "'");
}

ExponentSet ExponentSet::make_preset(Preset p) {
    ExponentSet s;
    s.kind_ = SetKind::preset;
    s.preset_ = p;
    switch (p) {
        case Preset::all: s.spec_ = "preset:all"; break;
        case Preset::only1: s.spec_ = "preset:only1"; break;
        case Preset::squarefree: s.spec_ = "preset:squarefree"; break;
        case Preset::pow2: s.spec_ = "preset:pow2"; break;
        case Preset::primes1: s.spec_ = "preset:primes1"; break;
    }
    return s;
}

ExponentSet ExponentSet::from_list(std::vector<uint64_t> members) {
    if (members.empty()) throw SpecError("set-spec: empty list");
    for (size_t i = 0; i + 1 < members.size(); ++i)
        if (members[i] >= members[i + 1])
            throw SpecError("set-spec: list members must be strictly increasing");
    if (members.front() != 1)
        throw SpecError("set-spec: list must contain 1 (admissible sets start at 1)");
    ExponentSet s;
    s.kind_ = SetKind::finite_list;
    s.members_ = std::move(members);
    s.spec_ = "list:";
    for (size_t i = 0; i < s.members_.size(); ++i) {
        if (i) s.spec_ += ',';
        s.spec_ += std::to_string(s.members_[i]);
    }
    return s;
}

ExponentSet ExponentSet::from_mask(std::vector<bool> mask_bits) {
    if (mask_bits.empty()) throw SpecError("set-spec: empty mask");
    ExponentSet s;
    s.kind_ = SetKind::mask;
    s.mask_ = std::move(mask_bits);
    s.spec_ = "mask:";
    for (bool b : s.mask_) s.spec_ += b ? '1' : '0';
    return s;
}

int ExponentSet::u(uint64_t n) const {
    assert(n >= 1);
    if (n == 1) return 1;
    switch (kind_) {
        case SetKind::preset:
            switch (preset_) {
                case Preset::all: return 1;
                case Preset::only1: return 0;
                case Preset::squarefree: return is_squarefree_small(n) ? 1 : 0;
                case Preset::pow2: return (n & (n - 1)) == 0 ? 1 : 0;
                case Preset::primes1: return is_prime_small(n) ? 1 : 0;
            }
            return 0;
        case SetKind::finite_list:
            return std::binary_search(members_.begin(), members_.end(), n) ? 1 : 0;
        case SetKind::mask: {
            uint64_t i = n - 2;
            return i < mask_.size() && mask_[i] ? 1 : 0;
        }
    }
    return 0;
}

VSeq ExponentSet::v_seq(int n_max) const {
    if (n_max < 2) throw std::invalid_argument("v_seq: n_max must be >= 2");
    std::vector<int8_t> v;
    v.reserve(static_cast<size_t>(n_max - 1));
    int prev = 1; // u(1)
    for (int n = 2; n <= n_max; ++n) {
        int cur = u(static_cast<uint64_t>(n));
        v.push_back(static_cast<int8_t>(cur - prev));
        prev = cur;
    }
    return VSeq(n_max, std::move(v));
}

std::optional<int> ExponentSet::v_support_end() const {
    switch (kind_) {
        case SetKind::preset:
            if (preset_ == Preset::all) return 1;
            if (preset_ == Preset::only1) return 2;
            return std::nullopt;
        case SetKind::finite_list:
            return static_cast<int>(members_.back()) + 1;
        case SetKind::mask:
            return static_cast<int>(mask_.size()) + 2;
    }
    return std::nullopt;
}

const std::vector<std::pair<std::string, std::string>>& ExponentSet::preset_catalog() {
    static const std::vector<std::pair<std::string, std::string>> catalog = {
        {"all", "every positive integer; no exponent restriction"},
        {"only1", "S = {1}: members are the squarefree numbers"},
        {"squarefree", "exponents must themselves be squarefree"},
        {"pow2", "exponents must be powers of two (1, 2, 4, 8, ...)"},
        {"primes1", "exponents must be 1 or prime"},
    };
    return catalog;
}

} // namespace expdensity

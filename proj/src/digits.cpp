#include "fqzeta/digits.hpp"

#include <algorithm>
#include <cctype>

#include "fqzeta/errors.hpp"

namespace fqzeta {

Nat DigitExpansion::reconstruct() const {
    Nat n = 0;
    for (std::size_t i = digits.size(); i-- > 0;) {
        n *= base;
        n += digits[i];
    }
    return n;
}

DigitExpansion digits_base_q(const Nat& n, std::uint32_t q) {
    if (q < 2) throw InvalidArgument("digit base must be >= 2");
    if (n < 0) throw InvalidArgument("digit expansion of a negative integer");
    DigitExpansion out{q, {}};
    Nat rest = n;
    while (rest != 0) {
        Nat r = rest % q;
        out.digits.push_back(std::uint32_t(r.get_ui()));
        rest /= q;
    }
    return out;
}

std::uint64_t length_l(const Nat& n, std::uint32_t q) {
    if (q < 2) throw InvalidArgument("digit base must be >= 2");
    if (n < 0) throw InvalidArgument("length of a negative integer");
    std::uint64_t sum = 0;
    Nat rest = n;
    while (rest != 0) {
        Nat r = rest % q;
        sum += r.get_ui();
        rest /= q;
    }
    return sum;
}

bool carry_free(const Nat& j, const Nat& k, std::uint32_t q) {
    if (q < 2) throw InvalidArgument("digit base must be >= 2");
    if (j < 1 || k < 1) throw InvalidArgument("carry_free takes positive integers");
    Nat a = j, b = k;
    bool free = true;
    while (a != 0 && b != 0) {
        Nat da = a % q, db = b % q;
        if (da.get_ui() + db.get_ui() >= q) {
            free = false;
            break;
        }
        a /= q;
        b /= q;
    }
    if (free && length_l(j + k, q) != length_l(j, q) + length_l(k, q))
        throw TheoremViolation("carry-free sum failed length additivity (bug)");
    return free;
}

DigitPerm::DigitPerm(std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs) {
    std::sort(pairs.begin(), pairs.end());
    std::vector<std::uint32_t> positions, images;
    for (auto& pr : pairs) {
        positions.push_back(pr.first);
        images.push_back(pr.second);
    }
    for (std::size_t i = 1; i < positions.size(); ++i)
        if (positions[i] == positions[i - 1])
            throw InvalidArgument("digit permutation lists position " + std::to_string(positions[i]) + " twice");
    std::sort(images.begin(), images.end());
    for (std::size_t i = 1; i < images.size(); ++i)
        if (images[i] == images[i - 1])
            throw InvalidArgument("digit permutation maps two positions to " + std::to_string(images[i]));
    if (positions != images)
        throw InvalidArgument("digit permutation is not a bijection: it must permute its listed positions");
    for (auto& pr : pairs)
        if (pr.first != pr.second) pairs_.push_back(pr);
}

std::uint32_t DigitPerm::image(std::uint32_t pos) const {
    auto it = std::lower_bound(pairs_.begin(), pairs_.end(), pos,
                               [](const auto& pr, std::uint32_t x) { return pr.first < x; });
    if (it != pairs_.end() && it->first == pos) return it->second;
    return pos;
}

DigitPerm DigitPerm::inverse() const {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> inv;
    inv.reserve(pairs_.size());
    for (auto& pr : pairs_) inv.emplace_back(pr.second, pr.first);
    return DigitPerm(std::move(inv));
}

DigitPerm DigitPerm::parse(const std::string& text) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    std::size_t i = 0;
    auto read_uint = [&](const char* what) {
        if (i >= text.size() || !isdigit((unsigned char)text[i]))
            throw InvalidArgument(std::string("bad digit permutation '") + text + "': expected " + what);
        std::uint64_t v = 0;
        while (i < text.size() && isdigit((unsigned char)text[i])) {
            v = v * 10 + (text[i] - '0');
            if (v > 0xffffffffULL) throw InvalidArgument("digit position out of range");
            ++i;
        }
        return std::uint32_t(v);
    };
    while (i < text.size()) {
        std::uint32_t pos = read_uint("a position");
        if (i >= text.size() || text[i] != ':')
            throw InvalidArgument("bad digit permutation '" + text + "': expected ':'");
        ++i;
        std::uint32_t img = read_uint("an image");
        pairs.emplace_back(pos, img);
        if (i < text.size()) {
            if (text[i] != ',') throw InvalidArgument("bad digit permutation '" + text + "': expected ','");
            ++i;
        }
    }
    return DigitPerm(std::move(pairs));
}

std::string DigitPerm::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(pairs_[i].first) + ':' + std::to_string(pairs_[i].second);
    }
    return out;
}

Nat perm_apply(const DigitPerm& perm, const Nat& n, std::uint32_t q) {
    DigitExpansion ex = digits_base_q(n, q);
    Nat out = 0;
    for (std::size_t i = 0; i < ex.digits.size(); ++i) {
        if (!ex.digits[i]) continue;
        out += Nat(ex.digits[i]) * nat_pow(Nat(q), perm.image(std::uint32_t(i)));
    }
    return out;
}

} // namespace fqzeta

#include "qcl/classical.hpp"

#include <utility>

namespace qcl::classical {

Combination normalize(const Word& word) {
    Combination out;
    std::vector<std::pair<Word, mpq_class>> work{{word, 1}};
    while (!work.empty()) {
        auto [w, c] = std::move(work.back());
        work.pop_back();
        std::size_t i = 0;
        while (i + 1 < w.size() && w[i] < w[i + 1]) ++i;
        if (i + 1 >= w.size()) {
            auto [it, inserted] = out.try_emplace(w, c);
            if (!inserted) {
                it->second += c;
                if (it->second == 0) out.erase(it);
            }
            continue;
        }
        const uint8_t x = w[i], y = w[i + 1];
        if (x == y) continue;  // nilpotent letters
        if (x / 2 == y / 2) {
            // v^* v = 1 - v v^*
            Word dropped(w.begin(), w.begin() + i);
            dropped.insert(dropped.end(), w.begin() + i + 2, w.end());
            work.emplace_back(std::move(dropped), c);
            std::swap(w[i], w[i + 1]);
            work.emplace_back(std::move(w), -c);
        } else {
            std::swap(w[i], w[i + 1]);
            work.emplace_back(std::move(w), -c);
        }
    }
    return out;
}

Combination multiply(const Combination& x, const Combination& y) {
    Combination out;
    for (const auto& [wx, cx] : x) {
        for (const auto& [wy, cy] : y) {
            Word w = wx;
            w.insert(w.end(), wy.begin(), wy.end());
            for (const auto& [wn, cn] : normalize(w)) {
                auto [it, inserted] = out.try_emplace(wn, cx * cy * cn);
                if (!inserted) {
                    it->second += cx * cy * cn;
                    if (it->second == 0) out.erase(it);
                }
            }
        }
    }
    return out;
}

std::string to_string(const Combination& x) {
    if (x.empty()) return "0";
    std::string out;
    for (const auto& [w, c] : x) {
        if (!out.empty()) out += c < 0 ? " - " : " + ";
        else if (c < 0) out += "-";
        const mpq_class mag = abs(c);
        std::string word;
        for (uint8_t l : w) {
            if (!word.empty()) word += "*";
            word += (l % 2 ? "vd" : "v") + std::to_string(l / 2 + 1);
        }
        if (word.empty()) out += mag.get_str();
        else out += (mag == 1 ? "" : mag.get_str() + "*") + word;
    }
    return out;
}

}  // namespace qcl::classical

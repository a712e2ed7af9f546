#pragma once

#include <cctype>
#include <map>
#include <string>
#include <vector>

namespace svgcheck {

struct Element {
    std::string name;
    std::map<std::string, std::string> attrs;
};

struct Document {
    bool well_formed = false;
    std::string error;
    std::vector<Element> elements;  // document order, start tags only

    std::vector<Element> named(const std::string& n) const
    {
        std::vector<Element> out;
        for (const Element& e : elements) {
            if (e.name == n) out.push_back(e);
        }
        return out;
    }
    std::vector<Element> with(const std::string& key, const std::string& value) const
    {
        std::vector<Element> out;
        for (const Element& e : elements) {
            auto it = e.attrs.find(key);
            if (it != e.attrs.end() && it->second == value) out.push_back(e);
        }
        return out;
    }
};

// Minimal XML reader: balanced tags, quoted attributes, unique root.
inline Document parse(const std::string& s)
{
    Document doc;
    std::vector<std::string> stack;
    int roots = 0;
    std::size_t i = 0;
    auto fail = [&](const std::string& why) {
        doc.error = why + " at offset " + std::to_string(i);
        return doc;
    };
    while (i < s.size()) {
        if (s[i] != '<') {
            if (stack.empty() && !std::isspace(static_cast<unsigned char>(s[i]))) return fail("text outside root");
            ++i;
            continue;
        }
        if (s.compare(i, 5, "<?xml") == 0) {
            const auto end = s.find("?>", i);
            if (end == std::string::npos) return fail("unterminated declaration");
            i = end + 2;
            continue;
        }
        if (s.compare(i, 2, "</") == 0) {
            const auto end = s.find('>', i);
            if (end == std::string::npos) return fail("unterminated end tag");
            const std::string name = s.substr(i + 2, end - i - 2);
            if (stack.empty() || stack.back() != name) return fail("mismatched </" + name + ">");
            stack.pop_back();
            i = end + 1;
            continue;
        }
        std::size_t j = i + 1;
        while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '-' || s[j] == ':')) ++j;
        Element e{s.substr(i + 1, j - i - 1), {}};
        if (e.name.empty()) return fail("empty tag name");
        bool self_closing = false;
        while (true) {
            while (j < s.size() && std::isspace(static_cast<unsigned char>(s[j]))) ++j;
            if (j >= s.size()) return fail("unterminated tag");
            if (s[j] == '>') {
                ++j;
                break;
            }
            if (s.compare(j, 2, "/>") == 0) {
                self_closing = true;
                j += 2;
                break;
            }
            std::size_t k = j;
            while (k < s.size() && s[k] != '=' && !std::isspace(static_cast<unsigned char>(s[k]))) ++k;
            const std::string key = s.substr(j, k - j);
            if (k + 1 >= s.size() || s[k] != '=' || s[k + 1] != '"') return fail("unquoted attribute " + key);
            const auto close = s.find('"', k + 2);
            if (close == std::string::npos) return fail("unterminated attribute");
            if (e.attrs.count(key)) return fail("duplicate attribute " + key);
            e.attrs[key] = s.substr(k + 2, close - k - 2);
            j = close + 1;
        }
        if (stack.empty() && ++roots > 1) return fail("multiple roots");
        if (!self_closing) stack.push_back(e.name);
        doc.elements.push_back(std::move(e));
        i = j;
    }
    if (!stack.empty()) return fail("unclosed <" + stack.back() + ">");
    if (roots != 1) return fail("no root element");
    doc.well_formed = true;
    return doc;
}

} // namespace svgcheck

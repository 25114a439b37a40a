// Copyright the polyocr contributors. Licensed under the Apache License 2.0.
// See LICENSE in the project root.
//
// Parser for hOCR-style page description files (XHTML with ocr_page /
// ocr_line / ocrx_word elements whose title attributes carry bbox and
// confidence properties). Hand-rolled: the subset is small and we need
// element-path error messages.
#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polyocr/docmodel.hpp"
#include "polyocr/errors.hpp"
#include "polyocr/polytonic.hpp"

namespace polyocr {

namespace xml {

struct Node {
    std::string name;
    std::vector<std::pair<std::string, std::string>> attrs;
    std::vector<Node> elements;
    // Text runs interleaved with child elements: (elements seen so far, text).
    std::vector<std::pair<std::size_t, std::string>> text_runs;

    std::string attr(std::string_view key) const {
        for (const auto& [k, v] : attrs)
            if (k == key) return v;
        return {};
    }

    void gather_text(std::string& out) const {
        std::size_t run = 0;
        for (std::size_t k = 0; k <= elements.size(); ++k) {
            while (run < text_runs.size() && text_runs[run].first == k)
                out += text_runs[run++].second;
            if (k < elements.size()) elements[k].gather_text(out);
        }
    }

    std::string all_text() const {
        std::string out;
        gather_text(out);
        return out;
    }
};

class Parser {
public:
    explicit Parser(std::string_view input) : in_(input) {}

    Node parse_document() {
        skip_prolog();
        if (eof()) fail("no root element");
        Node root = parse_element();
        skip_ws_and_misc();
        if (!eof()) fail("trailing content after root element");
        return root;
    }

private:
    std::string_view in_;
    std::size_t pos_ = 0;
    std::vector<std::string> path_;
    std::size_t child_index_ = 0;  // sibling index of the element being opened

    [[noreturn]] void fail(const std::string& msg) const {
        std::string where;
        for (const auto& p : path_) where += "/" + p;
        if (where.empty()) where = "/";
        throw InputError("hOCR parse error at " + where + ": " + msg);
    }

    bool eof() const { return pos_ >= in_.size(); }
    char peek() const { return in_[pos_]; }
    bool starts_with(std::string_view s) const { return in_.substr(pos_, s.size()) == s; }

    void skip_ws() {
        while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }

    void skip_until(std::string_view end, const char* what) {
        auto at = in_.find(end, pos_);
        if (at == std::string_view::npos) fail(std::string("unterminated ") + what);
        pos_ = at + end.size();
    }

    void skip_prolog() {
        for (;;) {
            skip_ws();
            if (starts_with("<?")) {
                skip_until("?>", "processing instruction");
            } else if (starts_with("<!--")) {
                skip_until("-->", "comment");
            } else if (starts_with("<!")) {
                skip_until(">", "doctype");
            } else {
                return;
            }
        }
    }

    void skip_ws_and_misc() {
        for (;;) {
            skip_ws();
            if (starts_with("<!--"))
                skip_until("-->", "comment");
            else
                return;
        }
    }

    static bool name_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == ':' ||
               c == '.';
    }

    std::string parse_name() {
        std::size_t start = pos_;
        while (!eof() && name_char(peek())) ++pos_;
        if (pos_ == start) fail("expected a name");
        return std::string(in_.substr(start, pos_ - start));
    }

    std::string decode_entities(std::string_view raw) {
        std::string out;
        out.reserve(raw.size());
        for (std::size_t i = 0; i < raw.size();) {
            if (raw[i] != '&') {
                out.push_back(raw[i++]);
                continue;
            }
            auto semi = raw.find(';', i);
            if (semi == std::string_view::npos) fail("unterminated entity");
            std::string_view ent = raw.substr(i + 1, semi - i - 1);
            if (ent == "amp") out += '&';
            else if (ent == "lt") out += '<';
            else if (ent == "gt") out += '>';
            else if (ent == "quot") out += '"';
            else if (ent == "apos") out += '\'';
            else if (ent == "nbsp") out += " ";
            else if (!ent.empty() && ent[0] == '#') {
                try {
                    char32_t cp = ent[1] == 'x' || ent[1] == 'X'
                                      ? std::stoul(std::string(ent.substr(2)), nullptr, 16)
                                      : std::stoul(std::string(ent.substr(1)), nullptr, 10);
                    utf8_append(out, cp);
                } catch (const std::exception&) {
                    fail("bad numeric entity '&" + std::string(ent) + ";'");
                }
            } else {
                fail("unknown entity '&" + std::string(ent) + ";'");
            }
            i = semi + 1;
        }
        return out;
    }

    static bool is_void_element(const std::string& name) {
        static const char* kVoid[] = {"meta", "br",    "img",   "link", "input", "hr",
                                      "area", "base",  "col",   "embed", "source", "track",
                                      "wbr"};
        for (const char* v : kVoid)
            if (name == v) return true;
        return false;
    }

    Node parse_element() {
        if (eof() || peek() != '<') fail("expected '<'");
        ++pos_;
        Node node;
        node.name = parse_name();
        path_.push_back(path_.empty() ? node.name
                                      : node.name + "[" + std::to_string(child_index_) + "]");

        for (;;) {
            skip_ws();
            if (eof()) fail("unterminated start tag");
            if (starts_with("/>")) {
                pos_ += 2;
                path_.pop_back();
                return node;
            }
            if (peek() == '>') {
                ++pos_;
                break;
            }
            std::string key = parse_name();
            skip_ws();
            if (eof() || peek() != '=') fail("attribute '" + key + "' missing '='");
            ++pos_;
            skip_ws();
            if (eof() || (peek() != '"' && peek() != '\'')) fail("attribute value must be quoted");
            const char quote = peek();
            ++pos_;
            auto close = in_.find(quote, pos_);
            if (close == std::string_view::npos) fail("unterminated attribute value");
            node.attrs.emplace_back(std::move(key), decode_entities(in_.substr(pos_, close - pos_)));
            pos_ = close + 1;
        }

        // HTML-style void elements may omit the closing slash.
        if (is_void_element(node.name)) {
            path_.pop_back();
            return node;
        }

        for (;;) {
            if (eof()) fail("missing closing tag");
            if (starts_with("</")) {
                pos_ += 2;
                std::string closing = parse_name();
                if (closing != node.name)
                    fail("mismatched closing tag '" + closing + "'");
                skip_ws();
                if (eof() || peek() != '>') fail("malformed closing tag");
                ++pos_;
                path_.pop_back();
                return node;
            }
            if (starts_with("<!--")) {
                skip_until("-->", "comment");
                continue;
            }
            if (peek() == '<') {
                child_index_ = node.elements.size();
                node.elements.push_back(parse_element());
                continue;
            }
            auto next = in_.find('<', pos_);
            if (next == std::string_view::npos) fail("missing closing tag");
            std::string text = decode_entities(in_.substr(pos_, next - pos_));
            if (!text.empty()) node.text_runs.emplace_back(node.elements.size(), std::move(text));
            pos_ = next;
        }
    }
};

inline bool has_class(const Node& n, std::string_view token) {
    std::string cls = n.attr("class");
    std::size_t i = 0;
    while (i < cls.size()) {
        while (i < cls.size() && std::isspace(static_cast<unsigned char>(cls[i]))) ++i;
        std::size_t j = i;
        while (j < cls.size() && !std::isspace(static_cast<unsigned char>(cls[j]))) ++j;
        if (std::string_view(cls).substr(i, j - i) == token) return true;
        i = j;
    }
    return false;
}

/// Parses the semicolon-separated hOCR title property string.
inline std::optional<std::vector<std::string>> title_property(const std::string& title,
                                                              std::string_view key) {
    std::size_t i = 0;
    while (i <= title.size()) {
        std::size_t end = title.find(';', i);
        if (end == std::string::npos) end = title.size();
        std::string_view prop = std::string_view(title).substr(i, end - i);
        while (!prop.empty() && std::isspace(static_cast<unsigned char>(prop.front())))
            prop.remove_prefix(1);
        if (prop.substr(0, key.size()) == key &&
            (prop.size() == key.size() ||
             std::isspace(static_cast<unsigned char>(prop[key.size()])))) {
            std::vector<std::string> fields;
            std::string cur;
            for (char c : prop.substr(key.size())) {
                if (std::isspace(static_cast<unsigned char>(c))) {
                    if (!cur.empty()) fields.push_back(std::move(cur)), cur.clear();
                } else {
                    cur.push_back(c);
                }
            }
            if (!cur.empty()) fields.push_back(std::move(cur));
            return fields;
        }
        i = end + 1;
    }
    return std::nullopt;
}

}  // namespace xml

struct HocrResult {
    Page page;
    std::size_t words_dropped = 0;  // missing bbox or empty text
    std::size_t lines_dropped = 0;  // no bbox and no words
    std::size_t boxes_clamped = 0;  // clipped into the page frame
    std::size_t extra_pages = 0;    // additional ocr_page elements ignored
};

namespace detail {

inline std::string collapse_ws(std::string_view s) {
    std::string out;
    bool pending = false;
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c)) || c == '\n') {
            pending = !out.empty();
        } else {
            if (pending) out.push_back(' ');
            pending = false;
            out.push_back(c);
        }
    }
    return out;
}

inline std::optional<BBox> title_bbox(const xml::Node& n) {
    auto fields = xml::title_property(n.attr("title"), "bbox");
    if (!fields || fields->size() != 4) return std::nullopt;
    try {
        return BBox{std::stoi((*fields)[0]), std::stoi((*fields)[1]), std::stoi((*fields)[2]),
                    std::stoi((*fields)[3])};
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

inline void find_by_class(const xml::Node& n, std::string_view token,
                          std::vector<const xml::Node*>& out) {
    if (xml::has_class(n, token)) {
        out.push_back(&n);
        return;  // do not descend into nested same-class containers
    }
    for (const auto& c : n.elements) find_by_class(c, token, out);
}

}  // namespace detail

/// Parses an hOCR document into a Page with a single default region holding
/// all lines in document order (regions come later from annotations).
inline HocrResult parse_hocr(std::string_view bytes) {
    xml::Parser parser(bytes);
    xml::Node root = parser.parse_document();

    HocrResult res;
    std::vector<const xml::Node*> pages;
    detail::find_by_class(root, "ocr_page", pages);
    if (pages.empty()) return res;  // empty body: page with zero regions
    res.extra_pages = pages.size() - 1;
    const xml::Node& pg = *pages.front();

    auto pgbox = detail::title_bbox(pg);
    if (!pgbox || !pgbox->valid())
        throw InputError("hOCR: ocr_page is missing page dimensions (title bbox)");
    res.page.id = pg.attr("id");
    res.page.width = pgbox->x1;
    res.page.height = pgbox->y1;

    auto clamp_box = [&](BBox b) {
        BBox c{std::clamp(b.x0, 0, res.page.width), std::clamp(b.y0, 0, res.page.height),
               std::clamp(b.x1, 0, res.page.width), std::clamp(b.y1, 0, res.page.height)};
        if (c != b) ++res.boxes_clamped;
        return c;
    };

    std::vector<const xml::Node*> line_nodes;
    detail::find_by_class(pg, "ocr_line", line_nodes);

    std::vector<Line> lines;
    for (const xml::Node* ln : line_nodes) {
        Line line;
        std::vector<const xml::Node*> word_nodes;
        detail::find_by_class(*ln, "ocrx_word", word_nodes);
        for (const xml::Node* wn : word_nodes) {
            auto box = detail::title_bbox(*wn);
            std::string text = normalize_nfc(detail::collapse_ws(wn->all_text()));
            if (!box || !box->valid() || text.empty()) {
                ++res.words_dropped;
                continue;
            }
            Word w;
            w.text = std::move(text);
            w.bbox = clamp_box(*box);
            if (auto conf = xml::title_property(wn->attr("title"), "x_wconf");
                conf && !conf->empty()) {
                try {
                    w.confidence = std::clamp(std::stod((*conf)[0]) / 100.0, 0.0, 1.0);
                } catch (const std::exception&) {
                }
            }
            line.words.push_back(std::move(w));
        }
        auto lbox = detail::title_bbox(*ln);
        if (lbox && lbox->valid())
            line.bbox = line.words.empty() ? clamp_box(*lbox)
                                           : clamp_box(*lbox).united(line.words_union());
        else if (!line.words.empty())
            line.bbox = line.words_union();
        else {
            ++res.lines_dropped;
            continue;
        }
        lines.push_back(std::move(line));
    }

    if (!lines.empty()) {
        Region def;
        def.id = "r0";
        def.rtype = kUnassignedRegion;
        def.bbox = lines.front().bbox;
        for (const Line& l : lines) def.bbox = def.bbox.united(l.bbox);
        def.lines = std::move(lines);
        res.page.regions.push_back(std::move(def));
    }
    return res;
}

}  // namespace polyocr

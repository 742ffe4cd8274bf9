#pragma once

// Formal isomorphism classes of graded degree-0 Higgs bundles on an elliptic
// curve, as multisets of indecomposable blocks:
//   LineBlock(P)     (L_P, 0) with L_P = O(P - O)
//   NBlock(P, r)     (S^{r-1}N (x) L_P, 0), N the nontrivial self-extension of O
//   UnifBlock        (O + O, id)
//   ExtBlock(r, s)   a nonzero extension of (O^r, 0) by (O^s, 0)

#include <algorithm>
#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hdrflow/ec/curve.hpp"

namespace hdrflow {

enum class BlockKind { Line, N, Unif, Ext };

struct Block
{
    BlockKind kind = BlockKind::Line;
    std::optional<Point> point; // Line and N blocks
    int r = 1;                  // N: symmetric power index; Ext: rank of the quotient
    int s = 0;                  // Ext: rank of the sub

    static Block line(const Point &P) { return {BlockKind::Line, P, 1, 0}; }
    static Block n(const Point &P, int r = 2)
    {
        if (r < 2)
            raise(ErrorKind::ParseError, "NBlock needs r >= 2");
        return {BlockKind::N, P, r, 0};
    }
    static Block unif() { return {BlockKind::Unif, std::nullopt, 2, 0}; }
    static Block ext(int r, int s)
    {
        if (r < 1 || s < 1)
            raise(ErrorKind::ParseError, "ExtBlock needs r, s >= 1");
        return {BlockKind::Ext, std::nullopt, r, s};
    }

    int rank() const noexcept
    {
        switch (kind) {
        case BlockKind::Line: return 1;
        case BlockKind::N: return r;
        case BlockKind::Unif: return 2;
        case BlockKind::Ext: return r + s;
        }
        return 0;
    }

    /// Every block carries degree-0 data.
    int degree() const noexcept { return 0; }

    std::string to_string() const
    {
        switch (kind) {
        case BlockKind::Line: return "line:" + point->to_string();
        case BlockKind::N: {
            std::string s = r == 2 ? "N" : "N" + std::to_string(r);
            return point->is_infinity() ? s : s + ":" + point->to_string();
        }
        case BlockKind::Unif: return "unif";
        case BlockKind::Ext: return "ext:" + std::to_string(r) + "," + std::to_string(s);
        }
        return {};
    }

    friend bool operator==(const Block &a, const Block &b)
    {
        return a.kind == b.kind && a.r == b.r && a.s == b.s && a.point == b.point;
    }

    friend std::strong_ordering operator<=>(const Block &a, const Block &b)
    {
        if (auto c = a.kind <=> b.kind; c != 0)
            return c;
        if (auto c = a.r <=> b.r; c != 0)
            return c;
        if (auto c = a.s <=> b.s; c != 0)
            return c;
        if (a.point && b.point)
            return *a.point <=> *b.point;
        return a.point.has_value() <=> b.point.has_value();
    }
};

/// A nonempty multiset of blocks over one curve, kept sorted so that
/// equality is multiset equality.
class HiggsState
{
    public:
        HiggsState(Curve curve, std::vector<Block> blocks) : curve_{std::move(curve)}, blocks_{std::move(blocks)}
        {
            if (blocks_.empty())
                raise(ErrorKind::ParseError, "a Higgs state needs at least one block");
            for (const Block &b : blocks_)
                if (b.point && !(b.point->curve() == curve_))
                    raise(ErrorKind::CurveMismatch, "block point on a different curve");
            std::sort(blocks_.begin(), blocks_.end());
        }

        const Curve &curve() const noexcept { return curve_; }
        const std::vector<Block> &blocks() const noexcept { return blocks_; }

        int rank() const noexcept
        {
            int total = 0;
            for (const Block &b : blocks_)
                total += b.rank();
            return total;
        }

        int degree() const noexcept { return 0; }

        bool has(BlockKind kind) const noexcept
        {
            return std::any_of(blocks_.begin(), blocks_.end(), [kind](const Block &b) { return b.kind == kind; });
        }

        bool pure_lines() const noexcept
        {
            return std::all_of(blocks_.begin(), blocks_.end(), [](const Block &b) { return b.kind == BlockKind::Line; });
        }

        friend bool operator==(const HiggsState &a, const HiggsState &b)
        {
            return a.curve_ == b.curve_ && a.blocks_ == b.blocks_;
        }

        std::string to_string() const
        {
            std::string out;
            for (const Block &b : blocks_) {
                if (!out.empty())
                    out += '+';
                out += b.to_string();
            }
            return out;
        }

        /// Literals "unif", "N", "N:x,y", "N<r>", "N<r>:x,y", "line:x,y",
        /// "line:inf", "ext:r,s", joined with '+'. Coordinates use the field's
        /// element syntax, whose own '+' signs are recognised and kept.
        static HiggsState parse(std::string_view text, const Curve &curve)
        {
            std::vector<std::string> tokens;
            std::size_t start = 0;
            while (start <= text.size()) {
                std::size_t end = text.find('+', start);
                if (end == std::string_view::npos)
                    end = text.size();
                std::string piece(text.substr(start, end - start));
                if (!tokens.empty() && !starts_block(piece))
                    tokens.back() += "+" + piece;
                else
                    tokens.push_back(std::move(piece));
                start = end + 1;
            }
            std::vector<Block> blocks;
            for (const auto &t : tokens)
                blocks.push_back(parse_block(t, curve));
            return HiggsState(curve, std::move(blocks));
        }

    private:
        static bool starts_block(std::string_view t)
        {
            return t == "unif" || t.starts_with("line:") || t.starts_with("ext:") || (!t.empty() && t.front() == 'N');
        }

        static Point parse_point(std::string_view t, const Curve &curve)
        {
            if (t == "inf")
                return curve.infinity();
            const auto comma = t.find(',');
            if (comma == std::string_view::npos)
                raise(ErrorKind::ParseError, "point literal needs 'x,y' or 'inf', got '" + std::string(t) + "'");
            return curve.point(FqElement::parse(curve.field(), t.substr(0, comma)),
                               FqElement::parse(curve.field(), t.substr(comma + 1)));
        }

        static int parse_positive(std::string_view t)
        {
            if (t.empty() || t.size() > 6 || !std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; }))
                raise(ErrorKind::ParseError, "expected a positive integer, got '" + std::string(t) + "'");
            return std::stoi(std::string(t));
        }

        static Block parse_block(std::string_view t, const Curve &curve)
        {
            if (t == "unif")
                return Block::unif();
            if (t.starts_with("line:"))
                return Block::line(parse_point(t.substr(5), curve));
            if (t.starts_with("ext:")) {
                auto body = t.substr(4);
                const auto comma = body.find(',');
                if (comma == std::string_view::npos)
                    raise(ErrorKind::ParseError, "ext literal needs 'ext:r,s'");
                return Block::ext(parse_positive(body.substr(0, comma)), parse_positive(body.substr(comma + 1)));
            }
            if (!t.empty() && t.front() == 'N') {
                auto body = t.substr(1);
                const auto colon = body.find(':');
                const auto rtext = body.substr(0, colon);
                const int r = rtext.empty() ? 2 : parse_positive(rtext);
                const Point P = colon == std::string_view::npos ? curve.infinity() : parse_point(body.substr(colon + 1), curve);
                return Block::n(P, r);
            }
            raise(ErrorKind::ParseError, "unknown block literal '" + std::string(t) + "'");
        }

        Curve curve_;
        std::vector<Block> blocks_;
};

} // namespace hdrflow

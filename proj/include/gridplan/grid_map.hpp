#pragma once
// 2D occupancy grids: the single collision authority for every planner.
//
// A grid is a row-major raster of free/blocked cells with a metric
// resolution (meters per cell). A world point (x, y) belongs to cell
// (floor(x/res), floor(y/res)); cells are half-open so a point on the far
// edge (x == width*res) is out of bounds, and out-of-bounds is blocked by
// definition.
//
// Supported formats:
//   - ASCII maps: '.' free, '#' blocked, optional 'S'/'G' markers (treated
//     as free, reported as suggested start/goal). One line per row.
//   - PGM P2/P5 with maxval <= 255: pixel >= 128 is free, < 128 blocked.

#include <cstdint>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gridplan/geometry.hpp"
#include "gridplan/rng.hpp"

namespace gridplan {

class FormatError : public std::runtime_error {
  public:
    explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

class GenerationError : public std::runtime_error {
  public:
    explicit GenerationError(const std::string& what) : std::runtime_error(what) {}
};

struct OccupancyGrid {
    int width = 0;   // cells
    int height = 0;  // cells
    double resolution = 1.0;  // meters per cell
    std::vector<std::uint8_t> cells;  // row-major, 0 = free, 1 = blocked

    static OccupancyGrid all_free(int width, int height, double resolution = 1.0) {
        OccupancyGrid g;
        g.width = width;
        g.height = height;
        g.resolution = resolution;
        g.cells.assign(static_cast<std::size_t>(width) * height, 0);
        return g;
    }

    std::size_t index(int cx, int cy) const {
        return static_cast<std::size_t>(cy) * width + cx;
    }

    bool in_bounds(int cx, int cy) const {
        return static_cast<unsigned>(cx) < static_cast<unsigned>(width) &&
               static_cast<unsigned>(cy) < static_cast<unsigned>(height);
    }

    // Out-of-range cells are blocked.
    bool cell_free(int cx, int cy) const {
        return in_bounds(cx, cy) && cells[index(cx, cy)] == 0;
    }

    void set_blocked(int cx, int cy, bool blocked) {
        cells[index(cx, cy)] = blocked ? 1 : 0;
    }

    long long blocked_count() const {
        long long n = 0;
        for (auto c : cells) n += c;
        return n;
    }

    // Center of a cell in world coordinates.
    Point cell_center(int cx, int cy) const {
        return {(cx + 0.5) * resolution, (cy + 0.5) * resolution};
    }
};

// True iff p lies inside the map and its containing cell is free.
// NaN coordinates compare false against the bounds and come back blocked.
inline bool is_free(const OccupancyGrid& grid, Point p) {
    if (!(p.x >= 0.0 && p.y >= 0.0)) return false;
    const double fx = p.x / grid.resolution;
    const double fy = p.y / grid.resolution;
    if (!(fx < grid.width && fy < grid.height)) return false;
    return grid.cells[grid.index(static_cast<int>(fx), static_cast<int>(fy))] == 0;
}

// ---------------- 8-connected stepping ----------------
// Straight moves cost 1 cell, diagonals sqrt(2); a diagonal is forbidden
// when either orthogonally adjacent cell of the corner is blocked.

struct GridStep {
    int dx;
    int dy;
    double cost;  // in cells; multiply by resolution for meters
};

inline constexpr double kSqrt2 = 1.41421356237309504880;

inline constexpr GridStep kGridSteps[8] = {
    {1, 0, 1.0},  {-1, 0, 1.0},  {0, 1, 1.0},  {0, -1, 1.0},
    {1, 1, kSqrt2}, {1, -1, kSqrt2}, {-1, 1, kSqrt2}, {-1, -1, kSqrt2},
};

inline bool step_allowed(const OccupancyGrid& grid, int cx, int cy, const GridStep& s) {
    const int nx = cx + s.dx;
    const int ny = cy + s.dy;
    if (!grid.cell_free(nx, ny)) return false;
    if (s.dx != 0 && s.dy != 0) {
        if (!grid.cell_free(cx + s.dx, cy) || !grid.cell_free(cx, cy + s.dy)) return false;
    }
    return true;
}

// 8-connected reachability under the same stepping rule the searches use.
inline bool cells_connected(const OccupancyGrid& grid, int ax, int ay, int bx, int by) {
    if (!grid.cell_free(ax, ay) || !grid.cell_free(bx, by)) return false;
    std::vector<std::uint8_t> seen(grid.cells.size(), 0);
    std::queue<std::pair<int, int>> frontier;
    frontier.push({ax, ay});
    seen[grid.index(ax, ay)] = 1;
    while (!frontier.empty()) {
        auto [cx, cy] = frontier.front();
        frontier.pop();
        if (cx == bx && cy == by) return true;
        for (const auto& s : kGridSteps) {
            if (!step_allowed(grid, cx, cy, s)) continue;
            const std::size_t i = grid.index(cx + s.dx, cy + s.dy);
            if (seen[i]) continue;
            seen[i] = 1;
            frontier.push({cx + s.dx, cy + s.dy});
        }
    }
    return false;
}

// ---------------- ASCII maps ----------------

struct AsciiMap {
    OccupancyGrid grid;
    std::optional<Point> start;  // cell center of the first 'S', if any
    std::optional<Point> goal;   // cell center of the first 'G', if any
};

inline AsciiMap load_ascii(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view line = text.substr(pos, nl - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        pos = nl + 1;
    }
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    if (lines.empty() || lines.front().empty())
        throw FormatError("ascii map: empty input");

    AsciiMap out;
    const std::size_t width = lines.front().size();
    out.grid.width = static_cast<int>(width);
    out.grid.height = static_cast<int>(lines.size());
    out.grid.cells.assign(width * lines.size(), 0);
    for (std::size_t y = 0; y < lines.size(); ++y) {
        if (lines[y].size() != width)
            throw FormatError("ascii map: ragged row at line " + std::to_string(y + 1));
        for (std::size_t x = 0; x < width; ++x) {
            const char c = lines[y][x];
            switch (c) {
                case '.':
                    break;
                case '#':
                    out.grid.cells[y * width + x] = 1;
                    break;
                case 'S':
                    if (!out.start) out.start = out.grid.cell_center(static_cast<int>(x), static_cast<int>(y));
                    break;
                case 'G':
                    if (!out.goal) out.goal = out.grid.cell_center(static_cast<int>(x), static_cast<int>(y));
                    break;
                default:
                    throw FormatError(std::string("ascii map: unknown character '") + c + "'");
            }
        }
    }
    return out;
}

inline std::string save_ascii(const OccupancyGrid& grid) {
    std::string out;
    out.reserve(static_cast<std::size_t>(grid.height) * (grid.width + 1));
    for (int y = 0; y < grid.height; ++y) {
        for (int x = 0; x < grid.width; ++x)
            out.push_back(grid.cells[grid.index(x, y)] ? '#' : '.');
        out.push_back('\n');
    }
    return out;
}

// ---------------- PGM P2 / P5 ----------------

namespace detail {

class PgmReader {
  public:
    explicit PgmReader(std::string_view bytes) : bytes_(bytes) {}

    std::string token() {
        skip_ws_and_comments();
        const std::size_t begin = pos_;
        while (pos_ < bytes_.size() && !is_space(bytes_[pos_])) ++pos_;
        if (begin == pos_) throw FormatError("pgm: truncated header");
        return std::string(bytes_.substr(begin, pos_ - begin));
    }

    int int_token() {
        const std::string t = token();
        int value = 0;
        for (char c : t) {
            if (c < '0' || c > '9') throw FormatError("pgm: expected integer, got '" + t + "'");
            value = value * 10 + (c - '0');
            if (value > 1 << 28) throw FormatError("pgm: integer out of range");
        }
        return value;
    }

    // P5 raster starts after exactly one whitespace byte following maxval.
    std::string_view raw(std::size_t n) {
        if (pos_ >= bytes_.size() || !is_space(bytes_[pos_]))
            throw FormatError("pgm: missing raster separator");
        ++pos_;
        if (bytes_.size() - pos_ < n) throw FormatError("pgm: truncated raster");
        std::string_view r = bytes_.substr(pos_, n);
        pos_ += n;
        return r;
    }

  private:
    static bool is_space(char c) {
        return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v';
    }

    void skip_ws_and_comments() {
        while (pos_ < bytes_.size()) {
            if (is_space(bytes_[pos_])) {
                ++pos_;
            } else if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    std::string_view bytes_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline constexpr int kPgmFreeThreshold = 128;  // pixel >= threshold is free

inline OccupancyGrid load_pgm(std::string_view bytes) {
    detail::PgmReader reader(bytes);
    const std::string magic = reader.token();
    if (magic != "P2" && magic != "P5") throw FormatError("pgm: bad magic '" + magic + "'");
    const int width = reader.int_token();
    const int height = reader.int_token();
    const int maxval = reader.int_token();
    if (width < 1 || height < 1) throw FormatError("pgm: bad dimensions");
    if (maxval < 1 || maxval > 255) throw FormatError("pgm: maxval must be in [1, 255]");

    OccupancyGrid grid = OccupancyGrid::all_free(width, height);
    const std::size_t n = grid.cells.size();
    if (magic == "P5") {
        std::string_view raster = reader.raw(n);
        for (std::size_t i = 0; i < n; ++i)
            grid.cells[i] = static_cast<std::uint8_t>(raster[i]) >= kPgmFreeThreshold ? 0 : 1;
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            const int v = reader.int_token();
            if (v > maxval) throw FormatError("pgm: pixel value exceeds maxval");
            grid.cells[i] = v >= kPgmFreeThreshold ? 0 : 1;
        }
    }
    return grid;
}

inline std::string save_pgm(const OccupancyGrid& grid) {
    std::string out = "P5\n" + std::to_string(grid.width) + " " +
                      std::to_string(grid.height) + "\n255\n";
    out.reserve(out.size() + grid.cells.size());
    for (auto c : grid.cells) out.push_back(c ? '\0' : '\xff');
    return out;
}

// ---------------- Procedural warehouse-style maps ----------------
// Axis-aligned rectangular obstacles (sides uniform in [10, 80] cells) until
// the requested blocked fraction is reached. Disks of radius 10 around the
// two anchor cells (50,50) and (width-50, height-50) are force-cleared, and
// the whole map is regenerated until those anchors are 8-connected.
// Deterministic for fixed arguments.

inline void clear_disk(OccupancyGrid& grid, int ax, int ay, int radius) {
    for (int y = std::max(0, ay - radius); y <= std::min(grid.height - 1, ay + radius); ++y)
        for (int x = std::max(0, ax - radius); x <= std::min(grid.width - 1, ax + radius); ++x)
            if ((x - ax) * (x - ax) + (y - ay) * (y - ay) <= radius * radius)
                grid.set_blocked(x, y, false);
}

struct WarehouseAnchors {
    int sx, sy, gx, gy;
};

inline WarehouseAnchors warehouse_anchors(int width, int height) {
    return {std::min(50, width - 1), std::min(50, height - 1),
            std::max(width - 50, 0), std::max(height - 50, 0)};
}

inline OccupancyGrid generate_warehouse(int width, int height, std::uint64_t seed,
                                        double obstacle_density) {
    if (width < 50 || height < 50)
        throw std::invalid_argument("generate_warehouse: width and height must be >= 50");
    if (!(obstacle_density >= 0.0 && obstacle_density <= 0.4))
        throw std::invalid_argument("generate_warehouse: obstacle_density must be in [0, 0.4]");

    const auto [sx, sy, gx, gy] = warehouse_anchors(width, height);
    const long long target =
        static_cast<long long>(obstacle_density * static_cast<double>(width) * height);
    SplitMix64 rng(seed);

    constexpr int kMaxAttempts = 25;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        OccupancyGrid grid = OccupancyGrid::all_free(width, height);
        long long blocked = 0;
        int placements = 0;
        while (blocked < target && placements < 200000) {
            ++placements;
            const int rw = std::min(rng.uniform_int(10, 80), width);
            const int rh = std::min(rng.uniform_int(10, 80), height);
            const int x0 = rng.uniform_int(0, width - rw);
            const int y0 = rng.uniform_int(0, height - rh);
            for (int y = y0; y < y0 + rh; ++y) {
                for (int x = x0; x < x0 + rw; ++x) {
                    auto& c = grid.cells[grid.index(x, y)];
                    if (!c) {
                        c = 1;
                        ++blocked;
                    }
                }
            }
        }
        clear_disk(grid, sx, sy, 10);
        clear_disk(grid, gx, gy, 10);
        if (cells_connected(grid, sx, sy, gx, gy)) return grid;
    }
    throw GenerationError("generate_warehouse: no connected map within retry budget");
}

}  // namespace gridplan

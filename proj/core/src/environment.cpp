#include "rrdt/environment.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "rrdt/errors.hpp"

namespace rrdt {

namespace {

constexpr std::size_t kMaxRejections = 1'000'000;

struct Raster {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<double> intensity;  // row-major, normalized to [0, 1]
};

std::vector<unsigned char> read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open map file: " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Raster decode_pgm(const std::vector<unsigned char>& bytes, const std::string& name) {
  std::size_t pos = 2;
  const bool binary = bytes[1] == '5';

  auto skip_space = [&] {
    while (pos < bytes.size()) {
      if (bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else if (std::isspace(bytes[pos])) {
        ++pos;
      } else {
        break;
      }
    }
  };
  auto read_uint = [&]() -> std::size_t {
    skip_space();
    if (pos >= bytes.size() || !std::isdigit(bytes[pos])) throw InputError("malformed PGM header: " + name);
    std::size_t v = 0;
    while (pos < bytes.size() && std::isdigit(bytes[pos])) v = v * 10 + (bytes[pos++] - '0');
    return v;
  };

  Raster r;
  r.width = read_uint();
  r.height = read_uint();
  const std::size_t maxval = read_uint();
  if (r.width == 0 || r.height == 0 || maxval == 0 || maxval > 65535)
    throw InputError("malformed PGM header: " + name);
  const std::size_t n = r.width * r.height;
  r.intensity.resize(n);

  if (binary) {
    ++pos;  // single whitespace after maxval
    const std::size_t bpp = maxval > 255 ? 2 : 1;
    if (bytes.size() < pos + n * bpp) throw InputError("truncated PGM data: " + name);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t v = bytes[pos + i * bpp];
      if (bpp == 2) v = (v << 8) | bytes[pos + i * bpp + 1];
      r.intensity[i] = static_cast<double>(v) / static_cast<double>(maxval);
    }
  } else {
    for (std::size_t i = 0; i < n; ++i)
      r.intensity[i] = static_cast<double>(read_uint()) / static_cast<double>(maxval);
  }
  return r;
}

Raster decode_png(const std::filesystem::path& path) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.string().c_str()))
    throw InputError("cannot decode PNG " + path.string() + ": " + image.message);
  image.format = PNG_FORMAT_GRAY;
  std::vector<png_byte> buffer(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
    png_image_free(&image);
    throw InputError("cannot decode PNG " + path.string() + ": " + image.message);
  }
  Raster r;
  r.width = image.width;
  r.height = image.height;
  r.intensity.resize(buffer.size());
  std::transform(buffer.begin(), buffer.end(), r.intensity.begin(),
                 [](png_byte b) { return static_cast<double>(b) / 255.0; });
  return r;
}

std::uint32_t read_u32_le(const std::vector<unsigned char>& b, std::size_t at) {
  return static_cast<std::uint32_t>(b[at]) | (static_cast<std::uint32_t>(b[at + 1]) << 8) |
         (static_cast<std::uint32_t>(b[at + 2]) << 16) | (static_cast<std::uint32_t>(b[at + 3]) << 24);
}

void write_u32_le(std::ostream& out, std::uint32_t v) {
  const std::array<char, 4> b{static_cast<char>(v & 0xFF), static_cast<char>((v >> 8) & 0xFF),
                              static_cast<char>((v >> 16) & 0xFF), static_cast<char>((v >> 24) & 0xFF)};
  out.write(b.data(), 4);
}

Environment decode_grid(const std::vector<unsigned char>& bytes, const std::string& name) {
  if (bytes.size() < 4) throw InputError("unsupported map format: " + name);
  const std::uint32_t dim = read_u32_le(bytes, 0);
  if (dim < 2 || dim > 16 || bytes.size() < 4 + 4 * std::size_t{dim})
    throw InputError("unsupported map format: " + name);
  std::vector<std::size_t> counts(dim);
  std::size_t cells = 1;
  for (std::uint32_t i = 0; i < dim; ++i) {
    counts[i] = read_u32_le(bytes, 4 + 4 * i);
    if (counts[i] == 0) throw InputError("grid axis with zero cells: " + name);
    cells *= counts[i];
  }
  const std::size_t header = 4 + 4 * std::size_t{dim};
  if (bytes.size() != header + cells) throw InputError("unsupported map format: " + name);
  std::vector<std::uint8_t> occ(bytes.begin() + static_cast<std::ptrdiff_t>(header), bytes.end());
  for (auto& c : occ) {
    if (c > 1) throw InputError("grid cell values must be 0 or 1: " + name);
  }
  return Environment(std::move(counts), std::vector<double>(dim, 1.0), std::vector<double>(dim, 0.0),
                     std::move(occ));
}

Environment from_raster(const Raster& r, double threshold) {
  std::vector<std::uint8_t> occ(r.intensity.size());
  std::transform(r.intensity.begin(), r.intensity.end(), occ.begin(),
                 [threshold](double v) { return static_cast<std::uint8_t>(v < threshold ? 1 : 0); });
  return Environment({r.width, r.height}, {1.0, 1.0}, {0.0, 0.0}, std::move(occ), threshold);
}

}  // namespace

Environment::Environment(std::vector<std::size_t> cell_counts, std::vector<double> cell_size,
                         std::vector<double> lower, std::vector<std::uint8_t> occupancy,
                         double obstacle_threshold)
    : counts_(std::move(cell_counts)),
      cell_size_(std::move(cell_size)),
      lower_(std::move(lower)),
      occupancy_(std::move(occupancy)),
      threshold_(obstacle_threshold) {
  const std::size_t d = counts_.size();
  if (d < 2) throw std::invalid_argument("environment dimension must be at least 2");
  if (cell_size_.size() != d || lower_.size() != d)
    throw std::invalid_argument("environment axis descriptions disagree in length");
  if (!(threshold_ >= 0.0 && threshold_ <= 1.0)) throw std::invalid_argument("obstacle threshold outside [0,1]");
  strides_.resize(d);
  upper_.resize(d);
  std::size_t cells = 1;
  for (std::size_t i = 0; i < d; ++i) {
    if (counts_[i] == 0) throw std::invalid_argument("zero cells along an axis");
    if (!(cell_size_[i] > 0.0) || !std::isfinite(cell_size_[i]))
      throw std::invalid_argument("cell size must be positive");
    strides_[i] = cells;
    cells *= counts_[i];
    upper_[i] = lower_[i] + static_cast<double>(counts_[i]) * cell_size_[i];
  }
  if (occupancy_.size() != cells) throw std::invalid_argument("occupancy size does not match cell counts");
  free_cells_ = static_cast<std::size_t>(std::count(occupancy_.begin(), occupancy_.end(), 0));
}

Environment Environment::empty(std::vector<std::size_t> cell_counts) {
  const std::size_t d = cell_counts.size();
  std::size_t cells = 1;
  for (auto c : cell_counts) cells *= c;
  return Environment(std::move(cell_counts), std::vector<double>(d, 1.0), std::vector<double>(d, 0.0),
                     std::vector<std::uint8_t>(cells, 0));
}

double Environment::min_cell_size() const noexcept {
  return *std::min_element(cell_size_.begin(), cell_size_.end());
}

double Environment::diagonal() const noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < dimension(); ++i) s += extent(i) * extent(i);
  return std::sqrt(s);
}

double Environment::bounds_volume() const noexcept {
  double v = 1.0;
  for (std::size_t i = 0; i < dimension(); ++i) v *= extent(i);
  return v;
}

double Environment::free_volume() const noexcept { return bounds_volume() * free_fraction(); }

double Environment::free_fraction() const noexcept {
  return static_cast<double>(free_cells_) / static_cast<double>(occupancy_.size());
}

std::size_t Environment::cell_index(std::span<const std::size_t> idx) const {
  if (idx.size() != dimension()) throw std::invalid_argument("cell index dimension mismatch");
  std::size_t flat = 0;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] >= counts_[i]) throw std::out_of_range("cell index outside grid");
    flat += idx[i] * strides_[i];
  }
  return flat;
}

std::vector<std::size_t> Environment::cell_coords(std::size_t flat) const {
  std::vector<std::size_t> idx(dimension());
  for (std::size_t i = 0; i < dimension(); ++i) {
    idx[i] = flat % counts_[i];
    flat /= counts_[i];
  }
  return idx;
}

Configuration Environment::cell_center(std::size_t flat) const {
  const auto idx = cell_coords(flat);
  std::vector<double> c(dimension());
  for (std::size_t i = 0; i < dimension(); ++i)
    c[i] = lower_[i] + (static_cast<double>(idx[i]) + 0.5) * cell_size_[i];
  return Configuration(std::move(c));
}

void Environment::check_dimension(std::span<const double> q) const {
  if (q.size() != dimension())
    throw std::invalid_argument("configuration dimension " + std::to_string(q.size()) +
                                " does not match environment dimension " + std::to_string(dimension()));
}

bool Environment::in_bounds(std::span<const double> q) const {
  check_dimension(q);
  for (std::size_t i = 0; i < q.size(); ++i)
    if (!(q[i] >= lower_[i] && q[i] < upper_[i])) return false;
  return true;
}

bool Environment::free_unchecked(const double* q) const noexcept {
  std::size_t flat = 0;
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    if (!(q[i] >= lower_[i] && q[i] < upper_[i])) return false;
    auto c = static_cast<std::size_t>((q[i] - lower_[i]) / cell_size_[i]);
    if (c >= counts_[i]) c = counts_[i] - 1;
    flat += c * strides_[i];
  }
  return occupancy_[flat] == 0;
}

bool Environment::is_free(std::span<const double> q) const {
  check_dimension(q);
  return free_unchecked(q.data());
}

bool Environment::segment_free(std::span<const double> a, std::span<const double> b, double resolution) const {
  check_dimension(a);
  check_dimension(b);
  if (!(resolution > 0.0)) throw std::invalid_argument("segment resolution must be positive");
  // Interpolate from the lexicographically smaller endpoint so (a,b) and
  // (b,a) visit bit-identical points.
  if (std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end())) std::swap(a, b);
  if (!free_unchecked(a.data()) || !free_unchecked(b.data())) return false;

  const double len = distance(a, b);
  const auto steps = static_cast<std::size_t>(std::ceil(len / resolution));
  if (steps <= 1) return true;
  const std::size_t d = a.size();
  double buf[16];
  std::vector<double> heap;
  double* p = buf;
  if (d > 16) {
    heap.resize(d);
    p = heap.data();
  }
  for (std::size_t i = 1; i < steps; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(steps);
    for (std::size_t k = 0; k < d; ++k) p[k] = a[k] + (b[k] - a[k]) * t;
    if (!free_unchecked(p)) return false;
  }
  return true;
}

Configuration Environment::uniform_in_bounds(RandomStream& rng) const {
  std::vector<double> q(dimension());
  for (std::size_t i = 0; i < q.size(); ++i) q[i] = rng.uniform(lower_[i], upper_[i]);
  return Configuration(std::move(q));
}

FreeSample Environment::sample_free(RandomStream& rng) const {
  if (free_cells_ == 0) throw std::runtime_error("environment has no free cell");
  FreeSample s;
  for (;;) {
    s.q = uniform_in_bounds(rng);
    if (free_unchecked(s.q.coords().data())) return s;
    if (++s.rejections >= kMaxRejections) throw std::runtime_error("sample_free exceeded the rejection cap");
  }
}

double unit_ball_volume(std::size_t d) noexcept {
  const double h = static_cast<double>(d) / 2.0;
  return std::pow(std::numbers::pi, h) / std::tgamma(h + 1.0);
}

Environment load_map(const std::filesystem::path& path, double obstacle_threshold) {
  if (!(obstacle_threshold >= 0.0 && obstacle_threshold <= 1.0))
    throw InputError("obstacle threshold must lie in [0,1]");
  const auto bytes = read_bytes(path);
  const std::string name = path.string();
  std::optional<Environment> env;
  if (bytes.size() >= 2 && bytes[0] == 'P' && (bytes[1] == '2' || bytes[1] == '5')) {
    env = from_raster(decode_pgm(bytes, name), obstacle_threshold);
  } else if (bytes.size() >= 8 && png_sig_cmp(bytes.data(), 0, 8) == 0) {
    env = from_raster(decode_png(path), obstacle_threshold);
  } else {
    env = decode_grid(bytes, name);
  }
  if (env->free_cells() == 0) throw InputError("map has no free cell: " + name);
  return std::move(*env);
}

Environment load_grid(const std::filesystem::path& path) {
  auto env = decode_grid(read_bytes(path), path.string());
  if (env.free_cells() == 0) throw InputError("map has no free cell: " + path.string());
  return env;
}

void save_grid(const Environment& env, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_u32_le(out, static_cast<std::uint32_t>(env.dimension()));
  for (std::size_t i = 0; i < env.dimension(); ++i) write_u32_le(out, static_cast<std::uint32_t>(env.cell_count(i)));
  for (auto c : env.occupancy()) out.put(static_cast<char>(c ? 1 : 0));
}

void save_pgm(const Environment& env, const std::filesystem::path& path) {
  if (env.dimension() != 2) throw std::invalid_argument("PGM export needs a 2-D environment");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "P5\n" << env.cell_count(0) << ' ' << env.cell_count(1) << "\n255\n";
  for (auto c : env.occupancy()) out.put(static_cast<char>(c ? 0 : 255));
}

}  // namespace rrdt

#include "kvar/snapshot.hpp"

#include <bit>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace kvar {

static_assert(std::endian::native == std::endian::little,
              "snapshot writer assumes a little-endian host");

void save_snapshot(const TensorField& field, const std::string& path) {
  nlohmann::json header;
  header["grid"] = {{"n", field.grid().n()},
                    {"resolution", field.grid().res()},
                    {"period", 1.0}};
  std::vector<std::string> valence;
  for (Slot s : field.slots()) valence.push_back(s == Slot::Cov ? "cov" : "con");
  header["valence"] = valence;
  header["byte_order"] = "little_endian";
  header["dtype"] = "binary64";
  header["count"] = field.raw().size();
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("save_snapshot: cannot open " + path);
  os << header.dump() << "\n";
  os.write(reinterpret_cast<const char*>(field.raw().data()),
           static_cast<std::streamsize>(field.raw().size() * sizeof(double)));
  if (!os) throw std::runtime_error("save_snapshot: short write to " + path);
}

TensorField load_snapshot(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("load_snapshot: cannot open " + path);
  std::string line;
  std::getline(is, line);
  nlohmann::json header = nlohmann::json::parse(line);
  if (header.value("byte_order", "") != "little_endian" || header.value("dtype", "") != "binary64")
    throw std::runtime_error("load_snapshot: unsupported encoding in " + path);
  TorusGrid grid(header["grid"]["n"].get<int>(), header["grid"]["resolution"].get<int>());
  std::vector<Slot> slots;
  for (const auto& v : header["valence"])
    slots.push_back(v.get<std::string>() == "cov" ? Slot::Cov : Slot::Con);
  TensorField field(grid, slots);
  const std::size_t count = header["count"].get<std::size_t>();
  if (count != field.raw().size()) {
    std::ostringstream os;
    os << "load_snapshot: element count " << count << " does not match valence/grid ("
       << field.raw().size() << ")";
    throw std::runtime_error(os.str());
  }
  is.read(reinterpret_cast<char*>(field.raw().data()),
          static_cast<std::streamsize>(count * sizeof(double)));
  if (static_cast<std::size_t>(is.gcount()) != count * sizeof(double))
    throw std::runtime_error("load_snapshot: truncated payload in " + path);
  return field;
}

}  // namespace kvar

#include "p1/trajectory_io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <ostream>

#include "p1/error.hpp"

namespace p1 {
namespace {

constexpr char kMagic[8] = {'P', '1', 'T', 'R', 'A', 'J', '1', '\0'};

void put_real(std::ostream& os, const Real& r) {
  const __float128 v = r.backend().value();
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

Real get_real(std::istream& is) {
  __float128 v;
  if (!is.read(reinterpret_cast<char*>(&v), sizeof v)) throw DomainError("truncated trajectory checkpoint");
  return Real(v);
}

void put_complex(std::ostream& os, const Complex& z) {
  put_real(os, z.real());
  put_real(os, z.imag());
}

Complex get_complex(std::istream& is) {
  const Real re = get_real(is);
  const Real im = get_real(is);
  return {re, im};
}

void put_u64(std::ostream& os, std::uint64_t v) { os.write(reinterpret_cast<const char*>(&v), sizeof v); }

std::uint64_t get_u64(std::istream& is) {
  std::uint64_t v;
  if (!is.read(reinterpret_cast<char*>(&v), sizeof v)) throw DomainError("truncated trajectory checkpoint");
  return v;
}

}  // namespace

void write_trajectory_csv(const P1Trajectory& tr, std::ostream& os) {
  os << "re(z),im(z),re(y),im(y),re(y'),im(y'),|E-drift|\n";
  for (const auto& s : tr.states) {
    os << to_string(s.z.real()) << ',' << to_string(s.z.imag()) << ',' << to_string(s.y.real()) << ','
       << to_string(s.y.imag()) << ',' << to_string(s.yp.real()) << ',' << to_string(s.yp.imag()) << ','
       << to_string(energy_drift(s), 6) << '\n';
  }
}

void save_trajectory(const P1Trajectory& tr, std::ostream& os) {
  os.write(kMagic, sizeof kMagic);
  put_u64(os, tr.states.size());
  for (std::size_t i = 0; i < tr.states.size(); ++i) {
    const auto& s = tr.states[i];
    for (const Complex* c : {&s.z, &s.y, &s.yp, &s.I, &s.E}) put_complex(os, *c);
    put_complex(os, i < tr.moments.size() ? tr.moments[i] : Complex(0));
  }
  put_u64(os, tr.waypoint_index.size());
  for (auto w : tr.waypoint_index) put_u64(os, w);
  put_u64(os, tr.step_radius.size());
  for (const auto& r : tr.step_radius) put_real(os, r);
  put_u64(os, tr.blew_up ? 1 : 0);
  put_complex(os, tr.blowup_z);
  put_real(os, tr.max_drift);
  if (!os) throw Error("failed to write trajectory checkpoint");
}

P1Trajectory load_trajectory(std::istream& is) {
  char magic[8];
  if (!is.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof kMagic) != 0) {
    throw DomainError("not a P1TRAJ1 checkpoint");
  }
  P1Trajectory tr;
  const auto n = get_u64(is);
  for (std::uint64_t i = 0; i < n; ++i) {
    P1State s;
    s.z = get_complex(is);
    s.y = get_complex(is);
    s.yp = get_complex(is);
    s.I = get_complex(is);
    s.E = get_complex(is);
    tr.states.push_back(s);
    tr.moments.push_back(get_complex(is));
  }
  const auto nw = get_u64(is);
  for (std::uint64_t i = 0; i < nw; ++i) tr.waypoint_index.push_back(get_u64(is));
  const auto nr = get_u64(is);
  for (std::uint64_t i = 0; i < nr; ++i) tr.step_radius.push_back(get_real(is));
  tr.blew_up = get_u64(is) != 0;
  tr.blowup_z = get_complex(is);
  tr.max_drift = get_real(is);
  return tr;
}

void save_trajectory(const P1Trajectory& tr, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open " + path);
  save_trajectory(tr, os);
}

P1Trajectory load_trajectory(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw DomainError("cannot open " + path);
  return load_trajectory(is);
}

}  // namespace p1

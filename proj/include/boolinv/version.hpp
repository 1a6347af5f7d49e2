#ifndef BOOLINV_VERSION_HPP_
#define BOOLINV_VERSION_HPP_

namespace boolinv {

  inline constexpr char const kVersion[] = "0.1.0";

}  // namespace boolinv

#endif  // BOOLINV_VERSION_HPP_

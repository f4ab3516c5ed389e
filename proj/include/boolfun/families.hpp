/*!
  \file families.hpp
  \brief Named and parameterized generators of test functions, including
  families with a prescribed alternating number.

  Seeded families use splitmix64 so corpora regenerate bit-identically from
  the same spec string.
*/

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "measures.hpp"
#include "truth_table.hpp"

namespace boolfun
{

/*! PRNG behind every seeded family. */
inline constexpr const char* family_rng = "splitmix64";

inline std::uint64_t splitmix64( std::uint64_t& state )
{
  std::uint64_t z = ( state += 0x9E3779B97F4A7C15ull );
  z = ( z ^ ( z >> 30 ) ) * 0xBF58476D1CE4E5B9ull;
  z = ( z ^ ( z >> 27 ) ) * 0x94D049BB133111EBull;
  return z ^ ( z >> 31 );
}

/*! Parsed form of `name(k=v,...)#seed`; generation is deterministic given all fields. */
struct FamilySpec
{
  std::string name;
  std::map<std::string, std::string> params;
  std::uint64_t seed = 0;
  bool has_seed = false;
};

inline FamilySpec parse_family_spec( std::string_view text )
{
  FamilySpec spec;
  std::string_view rest = text;
  if ( const auto hash = rest.rfind( '#' ); hash != std::string_view::npos )
  {
    const auto seed_text = rest.substr( hash + 1 );
    if ( seed_text.empty() )
    {
      throw parse_error( "empty seed" );
    }
    std::uint64_t seed = 0;
    for ( char c : seed_text )
    {
      if ( c < '0' || c > '9' )
      {
        throw parse_error( "seed must be a decimal integer" );
      }
      seed = seed * 10 + std::uint64_t( c - '0' );
    }
    spec.seed = seed;
    spec.has_seed = true;
    rest = rest.substr( 0, hash );
  }
  const auto open = rest.find( '(' );
  if ( open == std::string_view::npos )
  {
    spec.name = std::string( rest );
    return spec;
  }
  if ( rest.back() != ')' )
  {
    throw parse_error( "unbalanced parentheses in family spec" );
  }
  spec.name = std::string( rest.substr( 0, open ) );
  std::string_view args = rest.substr( open + 1, rest.size() - open - 2 );
  while ( !args.empty() )
  {
    const auto comma = args.find( ',' );
    const auto item = comma == std::string_view::npos ? args : args.substr( 0, comma );
    const auto eq = item.find( '=' );
    if ( eq == std::string_view::npos || eq == 0 )
    {
      throw parse_error( "family parameter must look like k=v" );
    }
    spec.params[std::string( item.substr( 0, eq ) )] = std::string( item.substr( eq + 1 ) );
    args = comma == std::string_view::npos ? std::string_view{} : args.substr( comma + 1 );
  }
  return spec;
}

namespace detail
{

inline int int_param( const FamilySpec& spec, const std::string& key )
{
  const auto it = spec.params.find( key );
  if ( it == spec.params.end() )
  {
    throw parse_error( "family " + spec.name + " needs parameter " + key );
  }
  int v = 0;
  for ( char c : it->second )
  {
    if ( c < '0' || c > '9' )
    {
      throw parse_error( "parameter " + key + " must be a nonnegative integer" );
    }
    v = v * 10 + ( c - '0' );
  }
  return v;
}

inline void require_arity( int n, const char* family )
{
  if ( n < 0 || n > max_arity )
  {
    throw parse_error( std::string( family ) + ": arity " + std::to_string( n ) + " out of range" );
  }
}

} // namespace detail

inline TruthTable make_or( int n )
{
  detail::require_arity( n, "or" );
  TruthTable t( n );
  for ( Point x = 1; x < Point( t.size() ); ++x )
  {
    t.set( x, true );
  }
  return t;
}

inline TruthTable make_and( int n )
{
  detail::require_arity( n, "and" );
  TruthTable t( n );
  t.set( point_mask( n ), true );
  return t;
}

inline TruthTable make_parity( int n )
{
  detail::require_arity( n, "parity" );
  TruthTable t( n );
  for ( Point x = 0; x < Point( t.size() ); ++x )
  {
    t.set( x, std::popcount( x ) % 2 == 1 );
  }
  return t;
}

inline TruthTable make_majority( int n )
{
  detail::require_arity( n, "majority" );
  if ( n % 2 == 0 )
  {
    throw parse_error( "majority needs odd arity" );
  }
  TruthTable t( n );
  for ( Point x = 0; x < Point( t.size() ); ++x )
  {
    t.set( x, 2 * std::popcount( x ) > n );
  }
  return t;
}

/*! OR of s disjoint ANDs of width w over n = w*s inputs. */
inline TruthTable make_tribes( int w, int s )
{
  if ( w < 1 || s < 1 )
  {
    throw parse_error( "tribes needs w >= 1 and s >= 1" );
  }
  const int n = w * s;
  detail::require_arity( n, "tribes" );
  TruthTable t( n );
  const Point tribe = point_mask( w );
  for ( Point x = 0; x < Point( t.size() ); ++x )
  {
    bool v = false;
    for ( int j = 0; j < s && !v; ++j )
    {
      v = ( ( x >> ( j * w ) ) & tribe ) == tribe;
    }
    t.set( x, v );
  }
  return t;
}

/*! Multiplexer: k address bits (low coordinates) select one of 2^k data bits. */
inline TruthTable make_address( int k )
{
  if ( k < 0 )
  {
    throw parse_error( "address needs k >= 0" );
  }
  const int n = k + ( 1 << k );
  detail::require_arity( n, "address" );
  TruthTable t( n );
  for ( Point x = 0; x < Point( t.size() ); ++x )
  {
    const Point addr = x & point_mask( k );
    t.set( x, x >> ( k + addr ) & 1 );
  }
  return t;
}

/*! Complete alternating AND/OR tree with AND at the root; n = fanin^depth leaves. */
inline TruthTable make_and_or_tree( int depth, int fanin )
{
  if ( depth < 1 || fanin < 1 )
  {
    throw parse_error( "and_or_tree needs depth >= 1 and fanin >= 1" );
  }
  std::int64_t leaves = 1;
  for ( int d = 0; d < depth; ++d )
  {
    leaves *= fanin;
    if ( leaves > max_arity )
    {
      throw parse_error( "and_or_tree exceeds the arity cap" );
    }
  }
  const int n = int( leaves );
  TruthTable t( n );
  const auto eval = [&]( const auto& self, Point x, int level, int offset, int width ) -> bool {
    if ( level == depth )
    {
      return x >> offset & 1;
    }
    const int child = width / fanin;
    const bool is_and = level % 2 == 0;
    bool v = is_and;
    for ( int j = 0; j < fanin; ++j )
    {
      const bool c = self( self, x, level + 1, offset + j * child, child );
      v = is_and ? ( v && c ) : ( v || c );
    }
    return v;
  };
  for ( Point x = 0; x < Point( t.size() ); ++x )
  {
    t.set( x, eval( eval, x, 0, 0, n ) );
  }
  return t;
}

inline TruthTable make_random( int n, std::uint64_t seed )
{
  detail::require_arity( n, "random" );
  TruthTable t( n );
  std::uint64_t state = seed;
  for ( Point x = 0; x < Point( t.size() ); ++x )
  {
    t.set( x, splitmix64( state ) & 1 );
  }
  return t;
}

/*! Random table followed by upward closure of its 1-set; always monotone. */
inline TruthTable make_random_monotone( int n, std::uint64_t seed )
{
  TruthTable t = make_random( n, seed );
  for ( int i = 0; i < n; ++i )
  {
    for ( Point x = 0; x < Point( t.size() ); ++x )
    {
      if ( ( x >> i & 1 ) && t.get( x ^ Point( 1 ) << i ) )
      {
        t.set( x, true );
      }
    }
  }
  return t;
}

/*! Symmetric function with value profile[popcount(x)]; profile has n+1 bits. */
inline TruthTable make_symmetric_profile( std::string_view profile )
{
  if ( profile.empty() )
  {
    throw parse_error( "empty profile" );
  }
  const int n = int( profile.size() ) - 1;
  detail::require_arity( n, "symmetric_profile" );
  for ( char c : profile )
  {
    if ( c != '0' && c != '1' )
    {
      throw parse_error( "profile must be a bit string" );
    }
  }
  TruthTable t( n );
  for ( Point x = 0; x < Point( t.size() ); ++x )
  {
    t.set( x, profile[std::popcount( x )] == '1' );
  }
  return t;
}

/*! \brief A function with alternating number exactly a.

  Builds a symmetric profile starting at 0 whose a alternation positions are
  drawn from the seed; every maximal chain of a symmetric function visits all
  levels, so alt equals the profile's alternation count.  The result is
  re-verified with the alt DP and regenerated on mismatch.
*/
inline TruthTable with_alt( int n, int a, std::uint64_t seed )
{
  detail::require_arity( n, "with_alt" );
  if ( a < 0 || a > n )
  {
    throw parse_error( "with_alt: need 0 <= a <= n" );
  }
  std::uint64_t state = seed;
  for ( int attempt = 0; attempt < 64; ++attempt )
  {
    // choose a of the n adjacent level pairs as alternation positions
    std::vector<int> slots( n );
    for ( int i = 0; i < n; ++i )
    {
      slots[i] = i;
    }
    for ( int i = n - 1; i > 0; --i )
    {
      std::swap( slots[i], slots[splitmix64( state ) % std::uint64_t( i + 1 )] );
    }
    std::vector<char> flip( n, 0 );
    for ( int i = 0; i < a; ++i )
    {
      flip[slots[i]] = 1;
    }
    std::string profile( n + 1, '0' );
    for ( int level = 1; level <= n; ++level )
    {
      profile[level] = profile[level - 1] == '1' ? '1' : '0';
      if ( flip[level - 1] )
      {
        profile[level] = profile[level] == '1' ? '0' : '1';
      }
    }
    TruthTable t = make_symmetric_profile( profile );
    if ( alt( t ).value == a )
    {
      return t;
    }
  }
  throw std::logic_error( "with_alt failed to verify" );
}

/*! Dispatch on the registered family names. */
inline TruthTable generate( const FamilySpec& spec )
{
  if ( spec.name == "or" )
  {
    return make_or( detail::int_param( spec, "n" ) );
  }
  if ( spec.name == "and" )
  {
    return make_and( detail::int_param( spec, "n" ) );
  }
  if ( spec.name == "parity" )
  {
    return make_parity( detail::int_param( spec, "n" ) );
  }
  if ( spec.name == "majority" )
  {
    return make_majority( detail::int_param( spec, "n" ) );
  }
  if ( spec.name == "tribes" )
  {
    return make_tribes( detail::int_param( spec, "w" ), detail::int_param( spec, "s" ) );
  }
  if ( spec.name == "address" )
  {
    return make_address( detail::int_param( spec, "k" ) );
  }
  if ( spec.name == "and_or_tree" )
  {
    return make_and_or_tree( detail::int_param( spec, "depth" ), detail::int_param( spec, "fanin" ) );
  }
  if ( spec.name == "random" )
  {
    return make_random( detail::int_param( spec, "n" ), spec.seed );
  }
  if ( spec.name == "random_monotone" )
  {
    return make_random_monotone( detail::int_param( spec, "n" ), spec.seed );
  }
  if ( spec.name == "symmetric_profile" )
  {
    const auto it = spec.params.find( "profile" );
    if ( it == spec.params.end() )
    {
      throw parse_error( "symmetric_profile needs profile=<bits>" );
    }
    return make_symmetric_profile( it->second );
  }
  if ( spec.name == "with_alt" )
  {
    return with_alt( detail::int_param( spec, "n" ), detail::int_param( spec, "a" ), spec.seed );
  }
  throw parse_error( "unknown family: " + spec.name );
}

/*! Accepts either the table text form `<n>:<hex>` or `family:<spec>`. */
inline TruthTable parse_function_spec( std::string_view text )
{
  constexpr std::string_view prefix = "family:";
  if ( text.substr( 0, prefix.size() ) == prefix )
  {
    return generate( parse_family_spec( text.substr( prefix.size() ) ) );
  }
  return TruthTable::parse( text );
}

} // namespace boolfun

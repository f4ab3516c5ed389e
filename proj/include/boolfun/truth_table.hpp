/*!
  \file truth_table.hpp
  \brief Bit-packed total Boolean functions and hypercube lattice utilities.

  A function f : {0,1}^n -> {0,1} is stored as a bit vector of length 2^n.
  The bit at index k is f(x) for the input x whose coordinate x_{j+1} equals
  bit j of k (little-endian input encoding).  Points and coordinate sets are
  plain integers under that encoding; coordinates are 0-based in code and
  rendered 1-based in serialized output.
*/

#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace boolfun
{

/*! Hard cap on arity: tables take 2^n bits, several searches take 3^n steps. */
inline constexpr int max_arity = 24;

/*! An input point; bit j holds coordinate j (0-based). */
using Point = std::uint32_t;

/*! A set of coordinate indices as a bitmask (bit j = coordinate j). */
using CoordSet = std::uint32_t;

struct parse_error : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

struct cap_exceeded : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

inline Point point_mask( int n )
{
  return n >= 32 ? ~Point( 0 ) : ( Point( 1 ) << n ) - 1;
}

class TruthTable
{
public:
  TruthTable() : n_( 0 ), words_( 1, 0 ) {}

  explicit TruthTable( int n ) : n_( n )
  {
    if ( n < 0 || n > max_arity )
    {
      throw cap_exceeded( "arity " + std::to_string( n ) + " outside [0, " + std::to_string( max_arity ) + "]" );
    }
    words_.assign( word_count( n ), 0 );
  }

  /*! \brief Parses the canonical text form `<n>:<hex>`.

    The hex field has exactly ceil(2^n/4) digits, most significant digit
    covering the highest indices.
  */
  static TruthTable parse( std::string_view text )
  {
    const auto colon = text.find( ':' );
    if ( colon == std::string_view::npos || colon == 0 )
    {
      throw parse_error( "expected <n>:<hex>" );
    }
    int n = 0;
    for ( char c : text.substr( 0, colon ) )
    {
      if ( c < '0' || c > '9' || colon > 2 )
      {
        throw parse_error( "malformed arity" );
      }
      n = n * 10 + ( c - '0' );
    }
    if ( n > max_arity )
    {
      throw cap_exceeded( "arity " + std::to_string( n ) + " above cap " + std::to_string( max_arity ) );
    }
    TruthTable t( n );
    const auto hex = text.substr( colon + 1 );
    const std::size_t want = ( t.size() + 3 ) / 4;
    if ( hex.size() != want )
    {
      throw parse_error( "expected " + std::to_string( want ) + " hex digits, got " + std::to_string( hex.size() ) );
    }
    for ( std::size_t p = 0; p < hex.size(); ++p )
    {
      const char c = hex[p];
      int d;
      if ( c >= '0' && c <= '9' )
      {
        d = c - '0';
      }
      else if ( c >= 'A' && c <= 'F' )
      {
        d = c - 'A' + 10;
      }
      else if ( c >= 'a' && c <= 'f' )
      {
        d = c - 'a' + 10;
      }
      else
      {
        throw parse_error( std::string( "invalid hex digit '" ) + c + "'" );
      }
      const std::uint64_t base = 4 * ( hex.size() - 1 - p );
      for ( int b = 0; b < 4; ++b )
      {
        if ( d & ( 1 << b ) )
        {
          if ( base + b >= t.size() )
          {
            throw parse_error( "stray bits above 2^n" );
          }
          t.set( Point( base + b ), true );
        }
      }
    }
    return t;
  }

  /*! Canonical text form: uppercase hex, no prefix. */
  std::string format() const
  {
    const std::size_t digits = ( size() + 3 ) / 4;
    std::string out = std::to_string( n_ ) + ":";
    for ( std::size_t p = 0; p < digits; ++p )
    {
      const std::uint64_t base = 4 * ( digits - 1 - p );
      int d = 0;
      for ( int b = 0; b < 4; ++b )
      {
        if ( base + b < size() && get( Point( base + b ) ) )
        {
          d |= 1 << b;
        }
      }
      out += "0123456789ABCDEF"[d];
    }
    return out;
  }

  int arity() const { return n_; }

  std::uint64_t size() const { return std::uint64_t( 1 ) << n_; }

  bool get( Point x ) const { return ( words_[x >> 6] >> ( x & 63 ) ) & 1; }

  void set( Point x, bool v )
  {
    const std::uint64_t bit = std::uint64_t( 1 ) << ( x & 63 );
    if ( v )
    {
      words_[x >> 6] |= bit;
    }
    else
    {
      words_[x >> 6] &= ~bit;
    }
  }

  /*! Bounds-checked evaluation. */
  bool evaluate( Point x ) const
  {
    if ( std::uint64_t( x ) >= size() )
    {
      throw std::out_of_range( "input " + std::to_string( x ) + " outside {0,1}^" + std::to_string( n_ ) );
    }
    return get( x );
  }

  /*! Number of 1-inputs. */
  std::uint64_t ones() const
  {
    std::uint64_t c = 0;
    for ( auto w : words_ )
    {
      c += std::popcount( w );
    }
    return c;
  }

  bool is_constant() const { return ones() == 0 || ones() == size(); }

  const std::vector<std::uint64_t>& words() const { return words_; }

  friend bool operator==( const TruthTable& a, const TruthTable& b )
  {
    return a.n_ == b.n_ && a.words_ == b.words_;
  }

  friend bool operator!=( const TruthTable& a, const TruthTable& b ) { return !( a == b ); }

private:
  static std::size_t word_count( int n )
  {
    return n <= 6 ? 1 : ( std::size_t( 1 ) << ( n - 6 ) );
  }

  int n_;
  std::vector<std::uint64_t> words_;
};

struct TruthTableHash
{
  std::size_t operator()( const TruthTable& t ) const
  {
    std::uint64_t h = 0x9E3779B97F4A7C15ull ^ std::uint64_t( t.arity() );
    for ( auto w : t.words() )
    {
      h ^= w + 0x9E3779B97F4A7C15ull + ( h << 6 ) + ( h >> 2 );
    }
    return std::size_t( h );
  }
};

/*! x is below y in the hypercube lattice: x_i <= y_i for all i. */
inline bool point_leq( Point x, Point y )
{
  return ( x & ~y ) == 0;
}

inline bool point_less( Point x, Point y )
{
  return x != y && point_leq( x, y );
}

/*! \brief Witness order on points: lexicographic on the string x_1 x_2 ... x_n.

  The point whose lowest differing coordinate is 0 comes first.
*/
inline bool point_lex_less( Point a, Point b )
{
  if ( a == b )
  {
    return false;
  }
  const Point low = ( a ^ b ) & -( a ^ b );
  return ( b & low ) != 0;
}

/*! \brief Witness order on coordinate sets: lexicographic on the sorted index list.

  A proper prefix sorts first; otherwise the set containing the lowest
  differing coordinate does.
*/
inline bool set_lex_less( CoordSet a, CoordSet b )
{
  while ( true )
  {
    if ( a == b )
    {
      return false;
    }
    if ( a == 0 )
    {
      return true;
    }
    if ( b == 0 )
    {
      return false;
    }
    const int ia = std::countr_zero( a ), ib = std::countr_zero( b );
    if ( ia != ib )
    {
      return ia < ib;
    }
    a &= a - 1;
    b &= b - 1;
  }
}

/*! Points of {0,1}^n sorted by point_lex_less. */
inline std::vector<Point> points_in_lex_order( int n )
{
  std::vector<Point> order( std::size_t( 1 ) << n );
  // bit-reversal of the index realizes the string order directly
  for ( std::size_t i = 0; i < order.size(); ++i )
  {
    Point r = 0;
    for ( int j = 0; j < n; ++j )
    {
      if ( i >> ( n - 1 - j ) & 1 )
      {
        r |= Point( 1 ) << j;
      }
    }
    order[i] = r;
  }
  return order;
}

inline std::string point_to_string( Point x, int n )
{
  std::string s( std::size_t( n ), '0' );
  for ( int j = 0; j < n; ++j )
  {
    if ( x >> j & 1 )
    {
      s[j] = '1';
    }
  }
  return s;
}

/*!
  \brief Partial assignment of coordinates to {0,1}; unassigned coordinates are free.

  `fixed` marks assigned coordinates, `values` carries their bits (subset of
  `fixed`).
*/
struct Restriction
{
  CoordSet fixed = 0;
  CoordSet values = 0;

  /*! Subcube {x : x >= d}: fixes x_i = 1 wherever d_i = 1. */
  static Restriction above( Point d ) { return { d, d }; }

  /*! Subcube {x : x <= u}: fixes x_i = 0 wherever u_i = 0. */
  static Restriction under( Point u, int n ) { return { CoordSet( ~u ) & point_mask( n ), 0 }; }

  void fix( int coord, bool v )
  {
    fixed |= CoordSet( 1 ) << coord;
    if ( v )
    {
      values |= CoordSet( 1 ) << coord;
    }
    else
    {
      values &= ~( CoordSet( 1 ) << coord );
    }
  }

  bool fixes( int coord ) const { return fixed >> coord & 1; }

  int fixed_count() const { return std::popcount( fixed ); }

  friend bool operator==( const Restriction&, const Restriction& ) = default;
};

/*! Free coordinates of a restriction over n variables, ascending. */
inline std::vector<int> free_coords( const Restriction& r, int n )
{
  std::vector<int> out;
  for ( int i = 0; i < n; ++i )
  {
    if ( !r.fixes( i ) )
    {
      out.push_back( i );
    }
  }
  return out;
}

/*! \brief Subfunction induced by a restriction.

  The returned table has arity n - #fixed; free coordinates keep their
  relative order.
*/
inline TruthTable restrict_table( const TruthTable& t, const Restriction& r )
{
  const int n = t.arity();
  if ( r.fixed & ~point_mask( n ) )
  {
    throw std::out_of_range( "restriction fixes a coordinate outside [0, n)" );
  }
  const auto free_list = free_coords( r, n );
  TruthTable out( int( free_list.size() ) );
  for ( Point y = 0; y < out.size(); ++y )
  {
    Point x = r.values;
    for ( std::size_t j = 0; j < free_list.size(); ++j )
    {
      if ( y >> j & 1 )
      {
        x |= Point( 1 ) << free_list[j];
      }
    }
    out.set( y, t.get( x ) );
  }
  return out;
}

/*! Single-coordinate restriction x_coord = v. */
inline TruthTable cofactor( const TruthTable& t, int coord, bool v )
{
  const int n = t.arity();
  if ( coord < 0 || coord >= n )
  {
    throw std::out_of_range( "cofactor coordinate out of range" );
  }
  TruthTable out( n - 1 );
  const Point lo = point_mask( coord );
  for ( Point y = 0; y < Point( out.size() ); ++y )
  {
    const Point x = ( y & lo ) | ( Point( v ) << coord ) | ( ( y & ~lo ) << 1 );
    out.set( y, t.get( x ) );
  }
  return out;
}

/*! Complements every output bit; an involution. */
inline TruthTable negate_output( const TruthTable& t )
{
  TruthTable out( t.arity() );
  for ( Point x = 0; x < Point( t.size() ); ++x )
  {
    out.set( x, !t.get( x ) );
  }
  return out;
}

/*! g(x) = f(~x): the table with bits reverse-permuted by k -> (2^n - 1) - k; an involution. */
inline TruthTable flip_all_inputs( const TruthTable& t )
{
  TruthTable out( t.arity() );
  const Point m = point_mask( t.arity() );
  for ( Point x = 0; x < Point( t.size() ); ++x )
  {
    out.set( x, t.get( ~x & m ) );
  }
  return out;
}

/*! f(x) <= f(y) whenever x <= y; checked on all hypercube edges. */
inline bool is_monotone( const TruthTable& t )
{
  for ( Point x = 0; x < Point( t.size() ); ++x )
  {
    if ( !t.get( x ) )
    {
      continue;
    }
    for ( int i = 0; i < t.arity(); ++i )
    {
      if ( !( x >> i & 1 ) && !t.get( x | Point( 1 ) << i ) )
      {
        return false;
      }
    }
  }
  return true;
}

} // namespace boolfun

"""
Sealing a selection in a cipher envelope
========================================

Serializes a selection result, seals it with the key-cycled cipher, shows
the envelope layout, and demonstrates tamper detection.

The cipher is a classical polyalphabetic substitution kept for
demonstration purposes; it is NOT secure.
"""

from fuzzkey import (
    CipherEnvelope,
    CipherKey,
    IntegrityError,
    MODE_LETTERS,
    RelevanceScore,
    encrypt,
    open_envelope,
    seal,
    select_topk,
    serialize_selection,
)

# the letters mode reproduces the classic per-letter pairing
key = CipherKey(b"SECRET", MODE_LETTERS)
print("HELLO under SECRET ->", encrypt(b"HELLO", key).decode())

# a selection result serializes canonically: rank TAB name TAB score
scores = [RelevanceScore(0, 0.91), RelevanceScore(1, 0.22), RelevanceScore(2, 0.57)]
result = select_topk(scores, 2)
payload = serialize_selection(result, ["temp", "rpm", "noise"])
print("\nserialized selection:")
print(payload.decode(), end="")

# seal with the byte-shift mode (handles arbitrary bytes) and a tag
byte_key = CipherKey(b"plant-floor-7")
envelope = seal(payload, byte_key, with_tag=True)
raw = envelope.to_bytes()
print("\nenvelope bytes:")
print("  magic+version+mode+flags:", raw[:7].hex())
print("  tag:", raw[7:15].hex())
print("  ciphertext:", raw[15:].hex())

# the receiver verifies the tag before decrypting
print("\nopened:", open_envelope(CipherEnvelope.from_bytes(raw), byte_key).decode(), end="")

# flip one ciphertext bit and the tag check refuses to decrypt
tampered = bytearray(raw)
tampered[-1] ^= 0x01
try:
    open_envelope(CipherEnvelope.from_bytes(bytes(tampered)), byte_key)
except IntegrityError as exc:
    print("\ntampered envelope rejected:", exc)

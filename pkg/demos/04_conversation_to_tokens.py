"""
From a conversation to an affective palette
===========================================

The AI-assisted path, run entirely offline against the deterministic mock
provider: chat about an experience, extract 4-7 emotion tokens with
intensities, then rescore a chosen subset.

Swap mock_provider() for make_provider(ProviderConfig.remote_from_env())
to run against a real chat-completion endpoint (set PHEMOTION_API_URL,
PHEMOTION_API_KEY, and optionally PHEMOTION_MODEL).
"""

from phemotion import ChatSession, elicit_reply, extract_tokens, mock_provider, score_intensity

provider = mock_provider(seed=1)
session = ChatSession(session_id="demo")

turns = [
    "I keep thinking about my last week in the old apartment.",
    "Mostly nostalgia, I think, and some quiet joy about what comes next.",
    "There was worry too, about whether I chose the right place.",
]
for text in turns:
    reply = elicit_reply(session, text, provider)
    print(f"you:  {text}")
    print(f"tool: {reply}\n")

transcript = session.user_transcript()
result = extract_tokens(transcript, provider)
print("extracted palette:")
for token in result.tokens:
    print(f"  {token.label}: {token.intensity}")

# Rescore two labels the user decided to keep.
rescored = score_intensity(transcript, ["nostalgia", "worry"], provider)
print("\nrescored:")
for entry in rescored:
    print(f"  {entry.label}: {entry.intensity}")

# Nothing above touched the filesystem: the session lives and dies in memory.
assert session.persisted is False
